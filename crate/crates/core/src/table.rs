//! Packed truth tables: bit `x` of the table is the value at state `x`.

/// Bit patterns of variables 0..6 inside one 64-bit word.
const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Value of variable `var` across the 64 states of word `word`.
pub(crate) fn var_word(var: usize, word: usize) -> u64 {
    if var < 6 {
        LOW_PATTERNS[var]
    } else if (word >> (var - 6)) & 1 == 1 {
        u64::MAX
    } else {
        0
    }
}

pub(crate) fn word_count(arity: usize) -> usize {
    if arity <= 6 {
        1
    } else {
        1 << (arity - 6)
    }
}

/// Mask of the meaningful bits of a word (only short for arity < 6).
pub(crate) fn valid_mask(arity: usize) -> u64 {
    if arity >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << arity)) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    words: Vec<u64>,
    arity: usize,
}

impl TruthTable {
    pub(crate) fn from_words(mut words: Vec<u64>, arity: usize) -> TruthTable {
        debug_assert_eq!(words.len(), word_count(arity));
        if arity < 6 {
            words[0] &= valid_mask(arity);
        }
        TruthTable { words, arity }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn get(&self, x: u64) -> bool {
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_constant(&self) -> Option<bool> {
        let valid = valid_mask(self.arity);
        if self.words.iter().all(|&w| w & valid == 0) {
            Some(false)
        } else if self.words.iter().all(|&w| w & valid == valid) {
            Some(true)
        } else {
            None
        }
    }

    /// Whether flipping `var` can move the value up (0 to 1) and/or down.
    pub fn dependence(&self, var: usize) -> (bool, bool) {
        let valid = valid_mask(self.arity);
        let mut up = false;
        let mut down = false;
        if var < 6 {
            let shift = 1 << var;
            let low = !LOW_PATTERNS[var] & valid;
            for &w in &self.words {
                let at0 = w & low;
                let at1 = (w >> shift) & low;
                up |= !at0 & at1 & low != 0;
                down |= at0 & !at1 & low != 0;
            }
        } else {
            let stride = 1 << (var - 6);
            for k in 0..self.words.len() {
                if k & stride != 0 {
                    continue;
                }
                let at0 = self.words[k];
                let at1 = self.words[k | stride];
                up |= !at0 & at1 != 0;
                down |= at0 & !at1 != 0;
            }
        }
        (up, down)
    }
}
