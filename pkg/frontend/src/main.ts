// DOM glue: wires the websocket to the controller and blits rendered surfaces
// onto two canvases.  All logic lives in the imported modules; keep this thin.

import { UiController } from './controller.js';
import { RgbSurface } from './ppm.js';
import { Command, MODES } from './protocol.js';
import { renderState } from './view.js';

const WS_URL = `ws://${location.hostname}:8765/ws`;

const PALETTE: [number, number, number][] = [
  [0, 0, 0],
  [255, 0, 0],
  [0, 200, 0],
  [0, 0, 255],
];

const BUTTON_COMMANDS: Record<string, Command> = {
  Clear: { action: 'clear' },
  Color: { action: 'set_mode', mode: 'Color' },
  Detect: { action: 'detect' },
  Draw: { action: 'set_mode', mode: 'Draw' },
  Erase: { action: 'set_mode', mode: 'Erase' },
  Move: { action: 'set_mode', mode: 'Move' },
  Save: { action: 'save' },
};

function blit(canvas: HTMLCanvasElement, surface: RgbSurface): void {
  if (canvas.width !== surface.width || canvas.height !== surface.height) {
    canvas.width = surface.width;
    canvas.height = surface.height;
  }
  const ctx = canvas.getContext('2d')!;
  ctx.putImageData(new ImageData(surface.rgba, surface.width, surface.height), 0, 0);
}

function start(): void {
  const cameraView = document.getElementById('camera') as HTMLCanvasElement;
  const canvasView = document.getElementById('canvas') as HTMLCanvasElement;
  const statusLine = document.getElementById('status')!;
  const banner = document.getElementById('banner')!;
  const buttonRow = document.getElementById('buttons')!;
  const swatchRow = document.getElementById('swatches')!;

  let socket: WebSocket | null = null;
  const controller = new UiController((text) => socket?.send(text));

  const modeButtons = new Map<string, HTMLButtonElement>();
  for (const mode of MODES) {
    const button = document.createElement('button');
    button.textContent = mode;
    button.addEventListener('click', () => controller.click(BUTTON_COMMANDS[mode]));
    buttonRow.appendChild(button);
    modeButtons.set(mode, button);
  }
  PALETTE.forEach((rgb, index) => {
    const swatch = document.createElement('button');
    swatch.className = 'swatch';
    swatch.style.background = `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
    swatch.title = `color ${index}`;
    swatch.addEventListener('click', () => controller.click({ action: 'set_color', index }));
    swatchRow.appendChild(swatch);
  });

  const refreshChrome = (): void => {
    const ui = controller.ui;
    const proto = ui.proto === null ? '' : ` (proto ${ui.proto})`;
    const latency = ui.latencyReadout === '' ? '' : ` | ${ui.latencyReadout}`;
    const hand =
      ui.lastState === null ? '' : ui.lastState.hand_detected ? ' | hand' : ' | no hand';
    statusLine.textContent = `${ui.status}${proto}${latency}${hand}`;
    banner.textContent = ui.lastError === '' ? ui.ocrBanner : `error: ${ui.lastError}`;
    for (const state of controller.buttons()) {
      const button = modeButtons.get(state.mode)!;
      button.classList.toggle('active', state.active);
      button.disabled = state.disabled;
    }
  };

  const connect = (): void => {
    socket = new WebSocket(WS_URL);
    socket.addEventListener('message', (event) => {
      const state = controller.handleMessage(String(event.data));
      if (state !== null) {
        const surfaces = renderState(state);
        blit(cameraView, surfaces.camera);
        blit(canvasView, surfaces.canvas);
      }
      refreshChrome();
    });
    socket.addEventListener('close', () => {
      const delay = controller.handleDisconnect();
      refreshChrome();
      setTimeout(connect, delay);
    });
    socket.addEventListener('error', () => socket?.close());
  };

  refreshChrome();
  connect();
}

window.addEventListener('load', start);
