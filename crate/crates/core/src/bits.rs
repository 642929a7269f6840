//! Word-level helpers for bit sequences stored as little-endian `u64` words.
//!
//! Bit `k` of a sequence lives in word `k / 64` at position `k % 64`.

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
pub(crate) fn get(words: &[u64], k: usize) -> bool {
    words
        .get(k / WORD)
        .is_some_and(|w| (w >> (k % WORD)) & 1 == 1)
}

#[inline]
pub(crate) fn set(words: &mut [u64], k: usize) {
    words[k / WORD] |= 1 << (k % WORD);
}

#[inline]
pub(crate) fn flip(words: &mut [u64], k: usize) {
    words[k / WORD] ^= 1 << (k % WORD);
}

/// Index of the highest set bit, if any.
pub(crate) fn highest(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .rev()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * WORD + (WORD - 1 - w.leading_zeros() as usize))
}

/// Index of the lowest set bit, if any.
pub(crate) fn lowest(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
}

/// XORs `src << shift` into `dst`, which must be long enough.
pub(crate) fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let word_shift = shift / WORD;
    let bit_shift = shift % WORD;
    if bit_shift == 0 {
        for (i, w) in src.iter().enumerate() {
            dst[i + word_shift] ^= w;
        }
    } else {
        for (i, w) in src.iter().enumerate() {
            dst[i + word_shift] ^= w << bit_shift;
            let carry = w >> (WORD - bit_shift);
            if carry != 0 {
                dst[i + word_shift + 1] ^= carry;
            }
        }
    }
}

/// Returns `src >> shift` (dropping low bits).
pub(crate) fn shr(src: &[u64], shift: usize) -> Vec<u64> {
    let word_shift = shift / WORD;
    let bit_shift = shift % WORD;
    if word_shift >= src.len() {
        return Vec::new();
    }
    let tail = &src[word_shift..];
    if bit_shift == 0 {
        return tail.to_vec();
    }
    (0..tail.len())
        .map(|i| {
            let hi = tail.get(i + 1).map_or(0, |w| w << (WORD - bit_shift));
            (tail[i] >> bit_shift) | hi
        })
        .collect()
}

pub(crate) fn trim(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

/// Parity of the popcount of `a & b`.
pub(crate) fn and_parity(a: &[u64], b: &[u64]) -> bool {
    a.iter()
        .zip(b)
        .fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones())
        & 1
        == 1
}

/// Carry-less product of two 64-bit words.
#[inline]
pub(crate) fn clmul(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime.
            return unsafe { clmul_pclmul(a, b) };
        }
    }
    clmul_portable(a, b)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq", enable = "sse2")]
unsafe fn clmul_pclmul(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::*;
    let x = _mm_set_epi64x(0, a as i64);
    let y = _mm_set_epi64x(0, b as i64);
    let r = _mm_clmulepi64_si128(x, y, 0x00);
    let lo = _mm_cvtsi128_si64(r) as u64;
    let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)) as u64;
    (u128::from(hi) << 64) | u128::from(lo)
}

/// Four-bit windowed carry-less multiply.
pub(crate) fn clmul_portable(a: u64, b: u64) -> u128 {
    let mut table = [0u128; 16];
    let b = u128::from(b);
    for i in 1..16usize {
        table[i] = if i & 1 == 1 {
            table[i - 1] ^ b
        } else {
            table[i >> 1] << 1
        };
    }
    let mut acc = 0u128;
    for nib in (0..16).rev() {
        acc <<= 4;
        acc ^= table[((a >> (nib * 4)) & 0xf) as usize];
    }
    acc
}

/// Carry-less product of two word vectors.
pub(crate) fn clmul_words(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let p = clmul(x, y);
            out[i + j] ^= p as u64;
            out[i + j + 1] ^= (p >> 64) as u64;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(a: u64, b: u64) -> u128 {
        let mut acc = 0u128;
        for i in 0..64 {
            if (a >> i) & 1 == 1 {
                acc ^= u128::from(b) << i;
            }
        }
        acc
    }

    #[test]
    fn clmul_matches_shift_and_xor() {
        let samples = [
            (0u64, 0u64),
            (1, 1),
            (0b11, 0b11),
            (u64::MAX, u64::MAX),
            (0x8000_0000_0000_0001, 0xdead_beef_0bad_f00d),
            (0x1234_5678_9abc_def0, 0x0fed_cba9_8765_4321),
        ];
        for (a, b) in samples {
            assert_eq!(clmul(a, b), naive(a, b));
            assert_eq!(clmul_portable(a, b), naive(a, b));
        }
    }

    #[test]
    fn shifting_round_trips() {
        let src = vec![0xf0f0_0000_0000_000fu64, 0x1];
        let mut dst = vec![0u64; 4];
        xor_shifted(&mut dst, &src, 70);
        assert_eq!(shr(&dst, 70)[..2], src[..]);
        assert_eq!(lowest(&dst), Some(70));
        assert_eq!(highest(&dst), Some(70 + 64));
    }
}
