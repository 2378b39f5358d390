// UI state machine, socket-agnostic: the DOM layer feeds it socket events and
// it answers with what to show and what to send.  Everything rendered comes
// from the last state message; the client never simulates board state itself.

import { Backoff } from './backoff.js';
import {
  Command,
  MODES,
  StateMessage,
  buildCommand,
  parseServerMessage,
} from './protocol.js';
import { latencyReadout } from './view.js';

export type ConnectionStatus = 'connecting' | 'connected' | 'reconnecting';

export interface ButtonState {
  mode: string;
  active: boolean;
  disabled: boolean;
}

export interface UiState {
  status: ConnectionStatus;
  proto: number | null;
  lastState: StateMessage | null;
  ocrBanner: string;
  latencyReadout: string;
  lastError: string;
  detectInFlight: boolean;
}

export class UiController {
  readonly ui: UiState = {
    status: 'connecting',
    proto: null,
    lastState: null,
    ocrBanner: '',
    latencyReadout: '',
    lastError: '',
    detectInFlight: false,
  };

  private backoff = new Backoff();

  constructor(private send: (text: string) => void) {}

  // Returns the state message when the text was one, so the caller can render.
  handleMessage(text: string): StateMessage | null {
    const msg = parseServerMessage(text);
    if (msg === null) {
      return null;
    }
    if (msg.type === 'hello') {
      this.ui.status = 'connected';
      this.ui.proto = msg.proto;
      this.backoff.reset();
      return null;
    }
    if (msg.type === 'error') {
      this.ui.lastError = msg.reason;
      return null;
    }
    this.applyState(msg);
    return msg;
  }

  private applyState(msg: StateMessage): void {
    this.ui.lastState = msg;
    this.ui.latencyReadout = latencyReadout(msg.latency_ms);
    for (const event of msg.events) {
      if (event.kind === 'detect_result') {
        this.ui.ocrBanner = `recognized: ${event.text}`;
        this.ui.detectInFlight = false;
      } else if (event.kind === 'detect_failed') {
        this.ui.ocrBanner = `detect failed: ${event.reason}`;
        this.ui.detectInFlight = false;
      } else if (event.kind === 'detect_busy') {
        this.ui.detectInFlight = false;
      }
    }
  }

  // Returns the delay before the next connection attempt.
  handleDisconnect(): number {
    this.ui.status = 'reconnecting';
    this.ui.proto = null;
    return this.backoff.next();
  }

  // Returns true when a command was actually sent.
  click(command: Command): boolean {
    if (this.ui.status !== 'connected') {
      return false;
    }
    if (command.action === 'detect') {
      if (this.ui.detectInFlight) {
        return false;
      }
      this.ui.detectInFlight = true;
    }
    this.send(buildCommand(command));
    return true;
  }

  buttons(): ButtonState[] {
    const mode = this.ui.lastState === null ? 'Move' : this.ui.lastState.mode;
    return MODES.map((m) => ({
      mode: m,
      active: m === mode,
      disabled: m === 'Detect' && this.ui.detectInFlight,
    }));
  }
}
