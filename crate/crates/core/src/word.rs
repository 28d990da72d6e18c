//! Words in free-group generators with signed letters.

use std::fmt;

/// One letter of a word: a generator index and an exponent of ±1.
pub type Letter = (usize, i8);

/// A freely reduced word in the generators `x_0, x_1, …`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(i: usize) -> Self {
        Word {
            letters: vec![(i, 1)],
        }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Appends a letter, cancelling against the current tail.
    pub fn push(&mut self, letter: Letter) {
        debug_assert!(letter.1 == 1 || letter.1 == -1);
        match self.letters.last() {
            Some(&(g, e)) if g == letter.0 && e == -letter.1 => {
                self.letters.pop();
            }
            _ => self.letters.push(letter),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Conjugate `self` by the generator `g`: `x_g · self · x_g⁻¹`.
    pub fn conjugate_by_gen(&self, g: usize) -> Word {
        let mut w = Word::generator(g);
        for &l in &self.letters {
            w.push(l);
        }
        w.push((g, -1));
        w
    }

    /// Exponent sum; the degree of the word under the map sending every
    /// generator to 1.
    pub fn degree(&self) -> i64 {
        self.letters.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, &(g, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            if e == 1 {
                write!(f, "x{}", g)?;
            } else {
                write!(f, "x{}⁻¹", g)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_cancels() {
        let mut w = Word::generator(0);
        w.push((1, 1));
        w.push((1, -1));
        assert_eq!(w, Word::generator(0));
    }

    #[test]
    fn inverse_concat_is_trivial() {
        let w = Word::from_letters([(0, 1), (1, -1), (2, 1)]);
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(w.degree(), 1);
    }

    #[test]
    fn conjugate_degree_unchanged() {
        let w = Word::from_letters([(0, 1), (1, -1)]);
        assert_eq!(w.conjugate_by_gen(2).degree(), 0);
    }
}
