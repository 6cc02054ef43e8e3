//! Bit-packed integer windows `[-x, x]` with shifted unions.

use super::seq::DifWindow;

#[derive(Clone, PartialEq, Eq)]
pub struct Band {
    x: i64,
    words: Vec<u64>,
}

impl Band {
    pub fn empty(x: i64) -> Self {
        let bits = (2 * x + 1) as usize;
        Band {
            x,
            words: vec![0; bits.div_ceil(64)],
        }
    }

    pub fn from_fn(x: i64, f: impl Fn(i64) -> bool) -> Self {
        let mut b = Band::empty(x);
        for v in -x..=x {
            if f(v) {
                b.insert(v);
            }
        }
        b
    }

    pub fn from_window(d: &DifWindow, x: i64) -> Self {
        Band::from_fn(x.min(d.w), |v| d.contains(v))
    }

    pub fn radius(&self) -> i64 {
        self.x
    }

    #[inline]
    pub fn contains(&self, v: i64) -> bool {
        if v.abs() > self.x {
            return false;
        }
        let i = (v + self.x) as usize;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: i64) {
        let i = (v + self.x) as usize;
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count() as i64 == 2 * self.x + 1
    }

    pub fn members(&self) -> impl Iterator<Item = i64> + '_ {
        (-self.x..=self.x).filter(|&v| self.contains(v))
    }

    fn trim(&mut self) {
        let bits = (2 * self.x + 1) as usize;
        let extra = self.words.len() * 64 - bits;
        if extra > 0 {
            let last = self.words.len() - 1;
            self.words[last] &= u64::MAX >> extra;
        }
    }

    /// `self |= src + s`, clipped to the window. Both bands share the radius.
    pub fn or_shifted(&mut self, src: &Band, s: i64) {
        debug_assert_eq!(self.x, src.x);
        let n = self.words.len();
        let (ws, bs) = ((s.unsigned_abs() / 64) as usize, (s.unsigned_abs() % 64) as u32);
        if ws >= n {
            return;
        }
        if s >= 0 {
            for j in (ws..n).rev() {
                let mut w = src.words[j - ws] << bs;
                if bs > 0 && j > ws {
                    w |= src.words[j - ws - 1] >> (64 - bs);
                }
                self.words[j] |= w;
            }
        } else {
            for j in 0..n - ws {
                let mut w = src.words[j + ws] >> bs;
                if bs > 0 && j + ws + 1 < n {
                    w |= src.words[j + ws + 1] << (64 - bs);
                }
                self.words[j] |= w;
            }
        }
        self.trim();
    }

    /// Whether `self ∩ (src + s)` is nonempty within the window.
    pub fn meets_shifted(&self, src: &Band, s: i64) -> bool {
        let mut t = Band::empty(self.x);
        t.or_shifted(src, s);
        t.words.iter().zip(&self.words).any(|(a, b)| a & b != 0)
    }

    /// `(S - S) ∩ [-x, x]` computed from the members of `S` in the window.
    pub fn dif(&self) -> Band {
        let mut out = Band::empty(self.x);
        for a in self.members() {
            out.or_shifted(self, -a);
            if out.is_full() {
                break;
            }
        }
        out
    }

    /// Restriction to a smaller radius.
    pub fn restrict(&self, x: i64) -> Band {
        Band::from_fn(x.min(self.x), |v| self.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifts_match_brute_force() {
        let src = Band::from_fn(150, |v| v % 7 == 0 || v == 149 || v == -150);
        for s in [-301, -200, -65, -64, -63, -1, 0, 1, 63, 64, 65, 130, 300] {
            let mut d = Band::empty(150);
            d.or_shifted(&src, s);
            for v in -150..=150 {
                assert_eq!(d.contains(v), src.contains(v - s), "s={s} v={v}");
            }
        }
    }

    #[test]
    fn windowed_dif() {
        let b = Band::from_fn(100, |v| [0, 1, 5].contains(&v));
        let d = b.dif();
        let want: Vec<i64> = vec![-5, -4, -1, 0, 1, 4, 5];
        assert_eq!(d.members().collect::<Vec<_>>(), want);
    }
}
