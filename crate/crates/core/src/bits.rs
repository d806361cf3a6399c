//! Packed bit vectors over GF(2).

use std::fmt;

/// A fixed-length vector over GF(2), packed 64 bits per word.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`.  Bits past `len` are
/// always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * 64 + w.trailing_zeros() as usize)
    }

    /// `self ^= other`.
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        xor_words(&mut self.words, &other.words);
    }

    /// `self ^= other`, touching only words from `start_word` on.  Callers use
    /// this when `other` is known to vanish below that word.
    pub fn xor_assign_from(&mut self, other: &BitVector, start_word: usize) {
        debug_assert_eq!(self.len, other.len);
        xor_words(&mut self.words[start_word..], &other.words[start_word..]);
    }

    /// `self ^= other` on the first `nwords` words only.
    pub fn xor_assign_prefix(&mut self, other: &BitVector, nwords: usize) {
        debug_assert_eq!(self.len, other.len);
        let n = nwords.min(self.words.len());
        xor_words(&mut self.words[..n], &other.words[..n]);
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    /// Lower-case hex of the little-endian word bytes.
    pub fn to_hex(&self) -> String {
        let bytes: Vec<u8> = self.words.iter().flat_map(|w| w.to_le_bytes()).collect();
        hex::encode(bytes)
    }

    pub fn from_hex(len: usize, text: &str) -> Option<Self> {
        let bytes = hex::decode(text).ok()?;
        let nwords = len.div_ceil(64);
        if bytes.len() != nwords * 8 {
            return None;
        }
        let words: Vec<u64> = bytes
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().expect("chunk of 8")))
            .collect();
        let v = BitVector { len, words };
        // reject stray bits past the end
        if !len.is_multiple_of(64) && nwords > 0 && v.words[nwords - 1] >> (len % 64) != 0 {
            return None;
        }
        Some(v)
    }
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "BitVector({s})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_and_scan() {
        let mut v = BitVector::zeros(130);
        assert!(v.is_zero());
        v.flip(3);
        v.flip(129);
        v.flip(64);
        assert_eq!(v.first_one(), Some(3));
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![3, 64, 129]);
        assert_eq!(v.count_ones(), 3);
        v.flip(3);
        assert_eq!(v.first_one(), Some(64));
    }

    #[test]
    fn hex_round_trip() {
        let v = BitVector::from_ones(70, [0, 5, 69]);
        let h = v.to_hex();
        assert_eq!(BitVector::from_hex(70, &h), Some(v));
        assert_eq!(
            BitVector::from_hex(71, &h),
            Some(BitVector::from_ones(71, [0, 5, 69]))
        );
        assert!(BitVector::from_hex(200, &h).is_none());
    }

    #[test]
    fn stray_high_bits_are_rejected() {
        let v = BitVector::from_ones(64, [63]);
        assert!(BitVector::from_hex(63, &v.to_hex()).is_none());
    }
}
