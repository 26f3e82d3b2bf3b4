/**
 * Short non-speech cues layered over playback: a page-flip for scene
 * changes and a warning buzz when an error span begins.  The clips are
 * synthesized once into WAV data URIs so the page stays self-contained.
 */

export interface Earcons {
  sceneChange(): void;
  warning(): void;
}

const RATE = 8000;

function wavDataUri(samples: number[]): string {
  const n = samples.length;
  const bytes = new Uint8Array(44 + n);
  const view = new DataView(bytes.buffer);
  const ascii = (off: number, s: string) => {
    for (let i = 0; i < s.length; i++) bytes[off + i] = s.charCodeAt(i);
  };
  ascii(0, "RIFF");
  view.setUint32(4, 36 + n, true);
  ascii(8, "WAVE");
  ascii(12, "fmt ");
  view.setUint32(16, 16, true);
  view.setUint16(20, 1, true); // PCM
  view.setUint16(22, 1, true); // mono
  view.setUint32(24, RATE, true);
  view.setUint32(28, RATE, true); // byte rate, 8-bit mono
  view.setUint16(32, 1, true);
  view.setUint16(34, 8, true);
  ascii(36, "data");
  view.setUint32(40, n, true);
  for (let i = 0; i < n; i++) bytes[44 + i] = samples[i];
  let bin = "";
  for (let i = 0; i < bytes.length; i++) bin += String.fromCharCode(bytes[i]);
  return "data:audio/wav;base64," + btoa(bin);
}

function tone(freqs: Array<[number, number]>): number[] {
  const out: number[] = [];
  for (const [freq, ms] of freqs) {
    const len = Math.floor((RATE * ms) / 1000);
    for (let i = 0; i < len; i++) {
      const fade = 1 - i / len;
      const square = Math.sin((2 * Math.PI * freq * i) / RATE) >= 0 ? 1 : -1;
      out.push(128 + Math.round(50 * fade * square));
    }
  }
  return out;
}

// quick high-to-low flick, like a page turning
export const SCENE_CHANGE_URI = wavDataUri(tone([[1400, 40], [900, 60]]));
// low insistent buzz
export const WARNING_URI = wavDataUri(tone([[220, 90], [180, 90]]));

export class AudioEarcons implements Earcons {
  private scene = new Audio(SCENE_CHANGE_URI);
  private warn = new Audio(WARNING_URI);

  sceneChange(): void {
    this.scene.currentTime = 0;
    void this.scene.play();
  }

  warning(): void {
    this.warn.currentTime = 0;
    void this.warn.play();
  }
}
