//! Vertices of the Hamming graph and their positional encoding.

use crate::error::{Error, Result};

/// A vertex of `H(n,q)`: a length-`n` tuple over `{0,..,q-1}`.
///
/// Coordinate 0 is the most significant base-`q` digit of the index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    symbols: Vec<u32>,
    q: u32,
}

impl Word {
    pub fn new(symbols: Vec<u32>, q: u32) -> Result<Self> {
        check_alphabet(q)?;
        if let Some(&symbol) = symbols.iter().find(|&&s| s >= q) {
            return Err(Error::SymbolOutOfRange { symbol, q });
        }
        Ok(Self { symbols, q })
    }

    pub fn from_index(index: usize, n: usize, q: u32) -> Result<Self> {
        check_alphabet(q)?;
        let size = vertex_count(n, q)?;
        if index >= size {
            return Err(Error::Precondition(format!(
                "index {index} outside [0, {size})"
            )));
        }
        let mut symbols = vec![0; n];
        decode_index(index, q, &mut symbols);
        Ok(Self { symbols, q })
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index(&self) -> usize {
        encode_index(&self.symbols, self.q)
    }

    pub fn hamming_distance(&self, other: &Word) -> Result<usize> {
        if self.q != other.q || self.len() != other.len() {
            return Err(Error::ShapeMismatch {
                n1: self.len(),
                q1: self.q,
                n2: other.len(),
                q2: other.q,
            });
        }
        Ok(distance(&self.symbols, &other.symbols))
    }

    /// All `n(q-1)` words at distance one, coordinate-major and
    /// symbol-ascending.
    pub fn neighbors(&self) -> Vec<Word> {
        let mut out = Vec::with_capacity(self.len() * (self.q as usize - 1));
        for r in 0..self.len() {
            for s in 0..self.q {
                if s != self.symbols[r] {
                    let mut symbols = self.symbols.clone();
                    symbols[r] = s;
                    out.push(Word { symbols, q: self.q });
                }
            }
        }
        out
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (p, s) in self.symbols.iter().enumerate() {
            if p > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_alphabet(q: u32) -> Result<()> {
    if q < 2 {
        Err(Error::InvalidAlphabet(q))
    } else {
        Ok(())
    }
}

/// `q^n`, failing when it does not fit in memory-addressable range.
pub fn vertex_count(n: usize, q: u32) -> Result<usize> {
    let mut size: u128 = 1;
    for _ in 0..n {
        size *= q as u128;
        if size > (1u128 << 40) {
            return Err(Error::Infeasible {
                size,
                limit: 1 << 40,
            });
        }
    }
    Ok(size as usize)
}

pub(crate) fn encode_index(symbols: &[u32], q: u32) -> usize {
    symbols
        .iter()
        .fold(0usize, |acc, &s| acc * q as usize + s as usize)
}

pub(crate) fn decode_index(mut index: usize, q: u32, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (index % q as usize) as u32;
        index /= q as usize;
    }
}

pub(crate) fn distance(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_examples() {
        assert_eq!(Word::new(vec![0, 0], 3).unwrap().index(), 0);
        assert_eq!(Word::new(vec![1, 2], 3).unwrap().index(), 5);
        assert_eq!(Word::new(vec![3, 3, 3], 4).unwrap().index(), 63);
    }

    #[test]
    fn index_round_trip() {
        for (n, q) in [(0, 2), (1, 5), (3, 3), (4, 4)] {
            for idx in 0..vertex_count(n, q).unwrap() {
                assert_eq!(Word::from_index(idx, n, q).unwrap().index(), idx);
            }
        }
    }

    #[test]
    fn distance_examples() {
        let w = |s: Vec<u32>, q| Word::new(s, q).unwrap();
        assert_eq!(w(vec![0, 0], 2).hamming_distance(&w(vec![0, 0], 2)), Ok(0));
        assert_eq!(w(vec![0, 1], 2).hamming_distance(&w(vec![1, 1], 2)), Ok(1));
        assert_eq!(
            w(vec![0, 1, 2], 3).hamming_distance(&w(vec![2, 1, 0], 3)),
            Ok(2)
        );
        assert!(w(vec![0, 1], 3).hamming_distance(&w(vec![0], 3)).is_err());
    }

    #[test]
    fn neighbor_examples() {
        let x = Word::new(vec![0, 0], 3).unwrap();
        let got: Vec<Vec<u32>> = x.neighbors().iter().map(|w| w.symbols().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 0], vec![2, 0], vec![0, 1], vec![0, 2]]);
        let single = Word::new(vec![0], 2).unwrap().neighbors();
        assert_eq!(single, vec![Word::new(vec![1], 2).unwrap()]);
        let y = Word::new(vec![1, 3, 0], 4).unwrap();
        assert_eq!(y.neighbors().len(), 9);
        assert!(y.neighbors().iter().all(|z| y.hamming_distance(z) == Ok(1)));
    }

    #[test]
    fn rejects_bad_symbols() {
        assert_eq!(
            Word::new(vec![0, 3], 3),
            Err(Error::SymbolOutOfRange { symbol: 3, q: 3 })
        );
        assert_eq!(Word::new(vec![0], 1), Err(Error::InvalidAlphabet(1)));
    }
}
