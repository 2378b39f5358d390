// Wire types for the session service: hello handshake, per-frame state
// snapshots, error replies, and the commands the UI may send back.

export interface HelloMessage {
  type: 'hello';
  proto: number;
  width: number;
  height: number;
}

export interface BoardEvent {
  frame: number;
  kind: string;
  [extra: string]: unknown;
}

export interface StateMessage {
  type: 'state';
  frame_index: number;
  camera_b64: string;
  canvas_b64: string;
  pointer_draw: [number, number] | null;
  pointer_select: [number, number] | null;
  mode: string;
  hand_detected: boolean;
  latency_ms: number;
  events: BoardEvent[];
}

export interface ErrorMessage {
  type: 'error';
  reason: string;
}

export type ServerMessage = HelloMessage | StateMessage | ErrorMessage;

export const MODES = ['Clear', 'Color', 'Detect', 'Draw', 'Erase', 'Move', 'Save'] as const;

function isPoint(value: unknown): value is [number, number] {
  return (
    Array.isArray(value) &&
    value.length === 2 &&
    value.every((n) => typeof n === 'number' && Number.isFinite(n))
  );
}

function isEvent(value: unknown): value is BoardEvent {
  if (typeof value !== 'object' || value === null) {
    return false;
  }
  const event = value as Record<string, unknown>;
  return typeof event.frame === 'number' && typeof event.kind === 'string';
}

export function parseServerMessage(text: string): ServerMessage | null {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof raw !== 'object' || raw === null || Array.isArray(raw)) {
    return null;
  }
  const msg = raw as Record<string, unknown>;
  switch (msg.type) {
    case 'hello':
      if (
        typeof msg.proto === 'number' &&
        typeof msg.width === 'number' &&
        typeof msg.height === 'number'
      ) {
        return msg as unknown as HelloMessage;
      }
      return null;
    case 'state':
      if (
        typeof msg.frame_index === 'number' &&
        typeof msg.camera_b64 === 'string' &&
        typeof msg.canvas_b64 === 'string' &&
        (msg.pointer_draw === null || isPoint(msg.pointer_draw)) &&
        (msg.pointer_select === null || isPoint(msg.pointer_select)) &&
        typeof msg.mode === 'string' &&
        typeof msg.hand_detected === 'boolean' &&
        typeof msg.latency_ms === 'number' &&
        Array.isArray(msg.events) &&
        msg.events.every(isEvent)
      ) {
        return msg as unknown as StateMessage;
      }
      return null;
    case 'error':
      if (typeof msg.reason === 'string') {
        return msg as unknown as ErrorMessage;
      }
      return null;
    default:
      return null;
  }
}

export type Command =
  | { action: 'clear' | 'save' | 'detect' }
  | { action: 'set_color'; index: number }
  | { action: 'set_mode'; mode: string };

export function buildCommand(command: Command): string {
  // literal key order matters: the server-side tests pin these exact strings
  if (command.action === 'set_color') {
    return JSON.stringify({ type: 'command', action: 'set_color', index: command.index });
  }
  if (command.action === 'set_mode') {
    return JSON.stringify({ type: 'command', action: 'set_mode', mode: command.mode });
  }
  return JSON.stringify({ type: 'command', action: command.action });
}
