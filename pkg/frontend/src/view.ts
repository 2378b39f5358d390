// Pure rendering: state message in, pixel surfaces out.  Nothing here touches
// the DOM, so every visible pixel is testable (and hashable) in plain node.

import { base64ToBytes, decodePpm, RgbSurface } from './ppm.js';
import { StateMessage } from './protocol.js';

export const CROSSHAIR_COLOR: [number, number, number] = [255, 0, 255];
export const CROSSHAIR_ARM = 6;

export interface RenderedSurfaces {
  camera: RgbSurface;
  canvas: RgbSurface;
}

function setPixel(surface: RgbSurface, x: number, y: number, rgb: [number, number, number]): void {
  if (x < 0 || x >= surface.width || y < 0 || y >= surface.height) {
    return;
  }
  const i = (y * surface.width + x) * 4;
  surface.rgba[i] = rgb[0];
  surface.rgba[i + 1] = rgb[1];
  surface.rgba[i + 2] = rgb[2];
  surface.rgba[i + 3] = 255;
}

export function drawCrosshair(surface: RgbSurface, x: number, y: number): void {
  for (let d = -CROSSHAIR_ARM; d <= CROSSHAIR_ARM; d++) {
    setPixel(surface, x + d, y, CROSSHAIR_COLOR);
    setPixel(surface, x, y + d, CROSSHAIR_COLOR);
  }
}

export function renderState(msg: StateMessage): RenderedSurfaces {
  const camera = decodePpm(base64ToBytes(msg.camera_b64));
  const canvas = decodePpm(base64ToBytes(msg.canvas_b64));
  if (msg.pointer_draw !== null) {
    drawCrosshair(canvas, msg.pointer_draw[0], msg.pointer_draw[1]);
  }
  return { camera, canvas };
}

export function surfaceHash(surface: RgbSurface): string {
  // FNV-1a over dimensions then RGBA bytes; enough to pin surfaces in tests
  let h = 0x811c9dc5;
  const mix = (byte: number) => {
    h = Math.imul(h ^ byte, 0x01000193) >>> 0;
  };
  mix(surface.width & 0xff);
  mix((surface.width >> 8) & 0xff);
  mix(surface.height & 0xff);
  mix((surface.height >> 8) & 0xff);
  for (let i = 0; i < surface.rgba.length; i++) {
    mix(surface.rgba[i]);
  }
  return h.toString(16).padStart(8, '0');
}

export function latencyReadout(latencyMs: number): string {
  return `${Math.round(latencyMs)} ms`;
}
