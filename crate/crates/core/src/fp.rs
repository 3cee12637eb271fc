//! Words and finitely presented groups.

use std::fmt;

use crate::error::{GroupError, Result};
use crate::perm::Perm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    /// `+1` or `-1`.
    pub exponent: i8,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Word {
            letters: vec![Letter {
                generator: g,
                exponent: 1,
            }],
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.exponent == 1 || l.exponent == -1));
        Word { letters }
    }

    /// `g^k` for any integer `k`.
    pub fn power_of(g: usize, k: i64) -> Self {
        let exponent = if k < 0 { -1 } else { 1 };
        Word {
            letters: vec![
                Letter {
                    generator: g,
                    exponent
                };
                k.unsigned_abs() as usize
            ],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Cancels adjacent `x x⁻¹` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Free reduction followed by cancelling inverse pairs across the ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce();
        let l = &w.letters;
        let mut lo = 0;
        let mut hi = l.len();
        while hi - lo >= 2 && l[lo] == l[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word {
            letters: l[lo..hi].to_vec(),
        }
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Value of the word when generator `k` is sent to `images[k]`.
    pub fn evaluate(&self, images: &[Perm], degree: usize) -> Perm {
        let mut acc = Perm::identity(degree);
        for l in &self.letters {
            let p = &images[l.generator];
            acc = if l.exponent > 0 { acc.mul(p) } else { acc.mul(&p.inverse()) };
        }
        acc
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let name = names
                .get(l.generator)
                .cloned()
                .unwrap_or_else(|| format!("x{}", l.generator));
            let e = run as i64 * l.exponent as i64;
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            i += run;
        }
        parts.join("*")
    }
}

/// A presentation `⟨generators | relators⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpGroup {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl FpGroup {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if let Some(w) = relators
            .iter()
            .find(|w| w.max_generator().is_some_and(|g| g >= generators.len()))
        {
            return Err(GroupError::InvalidInput(format!(
                "relator {w:?} references an undeclared generator"
            )));
        }
        Ok(FpGroup {
            generators,
            relators,
        })
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// First relator (index and word) that the images fail to kill.
    pub fn failing_relator(&self, images: &[Perm], degree: usize) -> Option<(usize, &Word)> {
        self.relators
            .iter()
            .enumerate()
            .find(|(_, r)| !r.evaluate(images, degree).is_identity())
    }
}

impl fmt::Display for FpGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.display_with(&self.generators)).collect();
        write!(f, "<{} | {}>", self.generators.join(","), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn letter(g: usize, e: i8) -> Letter {
        Letter {
            generator: g,
            exponent: e,
        }
    }

    #[test]
    fn reductions() {
        let w = Word::from_letters(vec![letter(0, 1), letter(1, 1), letter(1, -1), letter(0, 1)]);
        assert_eq!(w.free_reduce(), Word::power_of(0, 2));
        let c = Word::from_letters(vec![letter(1, -1), letter(0, 1), letter(1, 1)]);
        assert_eq!(c.cyclic_reduce(), Word::generator(0));
        assert!(Word::power_of(2, 3).mul(&Word::power_of(2, -3)).free_reduce().is_empty());
    }

    #[test]
    fn display_compresses_runs() {
        let names = vec!["a".to_string(), "b".to_string()];
        let w = Word::power_of(0, 2).mul(&Word::power_of(1, -1));
        assert_eq!(w.display_with(&names), "a^2*b^-1");
    }

    #[test]
    fn undeclared_generators_are_rejected() {
        assert!(FpGroup::new(vec!["a".into()], vec![Word::generator(1)]).is_err());
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec((0usize..3, prop_oneof![Just(1i8), Just(-1i8)]), 0..24)
            .prop_map(|v| Word::from_letters(v.into_iter().map(|(g, e)| letter(g, e)).collect()))
    }

    proptest! {
        #[test]
        fn free_reduction_is_idempotent(w in arb_word()) {
            let r = w.free_reduce();
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert!(r.letters().windows(2).all(|p| p[0] != p[1].inverse()));
        }

        #[test]
        fn free_reduction_is_confluent(a in arb_word(), b in arb_word()) {
            // Reducing the parts first must not change the normal form.
            let whole = a.mul(&b).free_reduce();
            let parts = a.free_reduce().mul(&b.free_reduce()).free_reduce();
            prop_assert_eq!(whole, parts);
        }

        #[test]
        fn word_times_inverse_reduces_to_empty(w in arb_word()) {
            prop_assert!(w.mul(&w.inverse()).free_reduce().is_empty());
        }
    }
}
