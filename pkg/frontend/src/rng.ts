/** SplitMix64 mirror of the service's corruption RNG.
 *
 * The service derives every corruption from (seed, fraction) with a
 * SplitMix64 stream and a partial Fisher-Yates draw.  Mirroring that
 * stream bit for bit lets the UI highlight exactly the cells the engine
 * will flip, before the retrieval request is even sent.  BigInt keeps
 * the 64-bit arithmetic exact.
 */

const MASK64 = (1n << 64n) - 1n;
const GOLDEN = 0x9e3779b97f4a7c15n;

export function mix64(z: bigint): bigint {
  z &= MASK64;
  z = ((z ^ (z >> 30n)) * 0xbf58476d1ce4e5b9n) & MASK64;
  z = ((z ^ (z >> 27n)) * 0x94d049bb133111ebn) & MASK64;
  return z ^ (z >> 31n);
}

export class SplitMix64 {
  private state: bigint;

  constructor(seed: bigint | number) {
    this.state = BigInt(seed) & MASK64;
  }

  nextU64(): bigint {
    this.state = (this.state + GOLDEN) & MASK64;
    return mix64(this.state);
  }

  /** Uniform integer in [0, n), rejection-sampled so it is unbiased. */
  randbelow(n: number): number {
    if (!Number.isInteger(n) || n <= 0) {
      throw new RangeError(`randbelow requires an integer n >= 1, got ${n}`);
    }
    if (n === 1) return 0;
    const big = BigInt(n);
    const span = MASK64 + 1n;
    const limit = span - (span % big);
    for (;;) {
      const u = this.nextU64();
      if (u < limit) return Number(u % big);
    }
  }

  /** k distinct positions from range(n): first k slots of a partial
   * Fisher-Yates shuffle, order included in the pinned behaviour. */
  sampleDistinct(n: number, k: number): number[] {
    if (k < 0 || k > n) {
      throw new RangeError(`need 0 <= k <= n, got k=${k}, n=${n}`);
    }
    const pool = Array.from({ length: n }, (_, i) => i);
    for (let i = 0; i < k; i++) {
      const j = i + this.randbelow(n - i);
      [pool[i], pool[j]] = [pool[j], pool[i]];
    }
    return pool.slice(0, k);
  }
}

/** Pixels to flip: round half away from zero (matches the service). */
export function flipCount(fraction: number, nPixels: number): number {
  return Math.floor(fraction * nPixels + 0.5);
}

/** The exact cell indices the service will flip for these settings. */
export function corruptionPositions(
  nPixels: number,
  fraction: number,
  seed: number,
): number[] {
  const k = flipCount(fraction, nPixels);
  return new SplitMix64(seed).sampleDistinct(nPixels, k);
}
