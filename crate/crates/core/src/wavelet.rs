//! Wavelet matrix over small integer sequences, supporting range
//! predecessor/successor by value.

const WORD: usize = 64;

/// A bit vector with one rank counter stored next to each word, so a rank
/// query touches a single cache line.
#[derive(Clone, Debug)]
struct RankBits {
    /// (word, ones before the word)
    blocks: Vec<(u64, u32)>,
}

impl RankBits {
    fn from_bits(bits: &[bool]) -> Self {
        let mut blocks = vec![(0u64, 0u32); bits.len() / WORD + 1];
        for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            blocks[i / WORD].0 |= 1 << (i % WORD);
        }
        let mut acc = 0u32;
        for b in &mut blocks {
            b.1 = acc;
            acc += b.0.count_ones();
        }
        RankBits { blocks }
    }

    /// Ones in `[0, i)`.
    #[inline]
    fn rank1(&self, i: usize) -> usize {
        let (w, b) = (i / WORD, i % WORD);
        let mask = (1u64 << b).wrapping_sub(1);
        let (word, before) = self.blocks[w];
        before as usize + (word & mask).count_ones() as usize
    }

    #[inline]
    fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }
}

#[derive(Clone, Debug)]
pub struct WaveletMatrix {
    levels: Vec<RankBits>,
    zeros: Vec<usize>,
}

impl WaveletMatrix {
    pub fn new(values: &[u32]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        let height = (u32::BITS - max.leading_zeros()).max(1) as usize;
        let mut cur = values.to_vec();
        let mut levels = Vec::with_capacity(height);
        let mut zeros = Vec::with_capacity(height);
        for level in 0..height {
            let shift = height - 1 - level;
            let bits: Vec<bool> = cur.iter().map(|&v| (v >> shift) & 1 == 1).collect();
            let (mut lo, hi): (Vec<u32>, Vec<u32>) = cur.iter().partition(|&&v| (v >> shift) & 1 == 0);
            zeros.push(lo.len());
            levels.push(RankBits::from_bits(&bits));
            lo.extend(hi);
            cur = lo;
        }
        WaveletMatrix { levels, zeros }
    }

    fn height(&self) -> usize {
        self.levels.len()
    }

    /// Number of values `< y` among positions `[lo, hi)`.
    #[cfg(test)]
    fn count_less(&self, mut lo: usize, mut hi: usize, y: u64) -> usize {
        if y >= 1u64 << self.height() {
            return hi - lo;
        }
        let mut count = 0;
        for (level, bits) in self.levels.iter().enumerate() {
            let shift = self.height() - 1 - level;
            let (l0, h0) = (bits.rank0(lo), bits.rank0(hi));
            if (y >> shift) & 1 == 1 {
                count += h0 - l0;
                lo = self.zeros[level] + (lo - l0);
                hi = self.zeros[level] + (hi - h0);
            } else {
                lo = l0;
                hi = h0;
            }
        }
        count
    }

    /// Largest value `<= y` among positions `[lo, hi)`.
    pub fn max_at_most(&self, lo: usize, hi: usize, y: u32) -> Option<u32> {
        let top = ((1u64 << self.height()) - 1) as u32;
        self.nearest(lo, hi, y.min(top), true)
    }

    /// Smallest value `>= y` among positions `[lo, hi)`.
    pub fn min_at_least(&self, lo: usize, hi: usize, y: u32) -> Option<u32> {
        if u64::from(y) >= 1u64 << self.height() {
            return None;
        }
        self.nearest(lo, hi, y, false)
    }

    /// Follows `y` down the levels, remembering the deepest branch that
    /// leaves `y`'s path on the wanted side, then finishes greedily inside it.
    fn nearest(&self, mut lo: usize, mut hi: usize, y: u32, below: bool) -> Option<u32> {
        if lo >= hi {
            return None;
        }
        let h = self.height();
        // (level of the branch's child, range, value prefix)
        let mut fallback: Option<(usize, usize, usize, u32)> = None;
        let mut value = 0u32;
        let mut exact = true;
        for (level, bits) in self.levels.iter().enumerate() {
            let shift = h - 1 - level;
            let (l0, h0) = (bits.rank0(lo), bits.rank0(hi));
            let (l1, h1) = (self.zeros[level] + (lo - l0), self.zeros[level] + (hi - h0));
            let bit = (y >> shift) & 1;
            // The sibling of y's branch lies on the wanted side when y's bit
            // is 1 (looking below) or 0 (looking above).
            if below && bit == 1 && l0 < h0 {
                fallback = Some((level + 1, l0, h0, value));
            } else if !below && bit == 0 && l1 < h1 {
                fallback = Some((level + 1, l1, h1, value | 1 << shift));
            }
            (lo, hi) = if bit == 1 { (l1, h1) } else { (l0, h0) };
            value |= bit << shift;
            if lo >= hi {
                exact = false;
                break;
            }
        }
        if exact {
            return Some(y);
        }
        let (start, mut lo, mut hi, mut value) = fallback?;
        for (level, bits) in self.levels.iter().enumerate().skip(start) {
            let shift = h - 1 - level;
            let (l0, h0) = (bits.rank0(lo), bits.rank0(hi));
            let (l1, h1) = (self.zeros[level] + (lo - l0), self.zeros[level] + (hi - h0));
            let take_one = if below { l1 < h1 } else { l0 >= h0 };
            if take_one {
                (lo, hi) = (l1, h1);
                value |= 1 << shift;
            } else {
                (lo, hi) = (l0, h0);
            }
        }
        Some(value)
    }
}
