// Binary PPM (P6) decoding, straight off the wire: the service sends frames
// as base64 PPM so the pixels shown here are bit-identical to what it rendered.

export interface RgbSurface {
  width: number;
  height: number;
  rgba: Uint8ClampedArray<ArrayBuffer>;
}

const WHITESPACE = new Set([0x20, 0x09, 0x0a, 0x0d, 0x0b, 0x0c]);

export function base64ToBytes(b64: string): Uint8Array {
  const binary = atob(b64);
  const bytes = new Uint8Array(binary.length);
  for (let i = 0; i < binary.length; i++) {
    bytes[i] = binary.charCodeAt(i);
  }
  return bytes;
}

export function decodePpm(bytes: Uint8Array): RgbSurface {
  let pos = 0;

  const token = (): string => {
    for (;;) {
      while (pos < bytes.length && WHITESPACE.has(bytes[pos])) {
        pos++;
      }
      if (pos < bytes.length && bytes[pos] === 0x23) {
        // comment runs to end of line
        while (pos < bytes.length && bytes[pos] !== 0x0a) {
          pos++;
        }
      } else {
        break;
      }
    }
    const start = pos;
    while (pos < bytes.length && !WHITESPACE.has(bytes[pos]) && bytes[pos] !== 0x23) {
      pos++;
    }
    if (start === pos) {
      throw new Error('truncated header');
    }
    return String.fromCharCode(...bytes.subarray(start, pos));
  };

  if (token() !== 'P6') {
    throw new Error('not a binary PPM');
  }
  const width = parseInt(token(), 10);
  const height = parseInt(token(), 10);
  const maxval = parseInt(token(), 10);
  if (!Number.isInteger(width) || !Number.isInteger(height) || width < 1 || height < 1) {
    throw new Error(`bad image size ${width}x${height}`);
  }
  if (maxval !== 255) {
    throw new Error(`unsupported maxval ${maxval}`);
  }
  pos++; // exactly one whitespace byte separates the header from pixel data

  const need = width * height * 3;
  if (bytes.length - pos < need) {
    throw new Error('truncated pixel data');
  }
  const rgba = new Uint8ClampedArray(width * height * 4);
  for (let i = 0, j = 0; i < need; i += 3, j += 4) {
    rgba[j] = bytes[pos + i];
    rgba[j + 1] = bytes[pos + i + 1];
    rgba[j + 2] = bytes[pos + i + 2];
    rgba[j + 3] = 255;
  }
  return { width, height, rgba };
}
