//! Finite truncations of the group algebra: sparse complex vectors over
//! the elements of G_i, with the left regular representation.
//!
//! A `GroupVector` is an element of the 2^i-dimensional Hilbert space with
//! the group elements as orthonormal basis. Normal form never stores an
//! amplitude whose modulus is below the scalar's zero threshold, so
//! support computations are exact for the embedding layer.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tower::{Element, Group, Level};

/// Set of group elements carrying nonzero amplitude.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support(pub BTreeSet<Element>);

impl Support {
    pub fn contains(&self, g: Element) -> bool {
        self.0.contains(&g)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.0.iter().copied()
    }
}

/// Sparse vector in the group algebra at one tower level.
///
/// Amplitudes are kept in element order, which makes every serialization
/// and iteration deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupVector<T: Scalar> {
    level: Level,
    amplitudes: BTreeMap<Element, Complex<T>>,
}

impl<T: Scalar> GroupVector<T> {
    pub fn zero(level: Level) -> Result<Self> {
        Group::new(level)?;
        Ok(GroupVector { level, amplitudes: BTreeMap::new() })
    }

    /// Point mass on a single element.
    pub fn delta(level: Level, g: Element) -> Result<Self> {
        let mut v = Self::zero(level)?;
        v.insert(g, Complex::new(T::one(), T::zero()))?;
        Ok(v)
    }

    pub fn from_terms<I>(level: Level, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Element, Complex<T>)>,
    {
        let mut v = Self::zero(level)?;
        for (g, amp) in terms {
            v.insert(g, amp)?;
        }
        Ok(v)
    }

    fn insert(&mut self, g: Element, amp: Complex<T>) -> Result<()> {
        self.group()?.position(g)?;
        let entry = self.amplitudes.entry(g).or_insert_with(|| Complex::new(T::zero(), T::zero()));
        *entry = *entry + amp;
        if entry.norm_sqr().sqrt() < T::zero_threshold() {
            self.amplitudes.remove(&g);
        }
        Ok(())
    }

    pub fn level(&self) -> Level {
        self.level
    }

    fn group(&self) -> Result<Group> {
        Group::new(self.level)
    }

    pub fn amplitude(&self, g: Element) -> Complex<T> {
        self.amplitudes.get(&g).copied().unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Element, Complex<T>)> + '_ {
        self.amplitudes.iter().map(|(&g, &a)| (g, a))
    }

    pub fn term_count(&self) -> usize {
        self.amplitudes.len()
    }

    fn check_same_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch { left: self.level, right: other.level });
        }
        Ok(())
    }

    /// Action of the group element `g` under the left regular
    /// representation: the amplitude of `h` moves to `g*h`.
    pub fn left_translate(&self, g: Element) -> Result<Self> {
        let group = self.group()?;
        group.position(g)?;
        let mut out = Self::zero(self.level)?;
        for (h, amp) in self.terms() {
            out.insert(group.mul(g, h)?, amp)?;
        }
        Ok(out)
    }

    /// Convolution product: (a*b)(g) = sum over h of a(h) b(h^{-1} g).
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_same_level(other)?;
        let group = self.group()?;
        let mut out = Self::zero(self.level)?;
        for (h, va) in self.terms() {
            for (k, vb) in other.terms() {
                out.insert(group.mul(h, k)?, va * vb)?;
            }
        }
        Ok(out)
    }

    /// Scalar product, conjugate-linear in the second argument.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.check_same_level(other)?;
        let mut acc = Complex::new(T::zero(), T::zero());
        for (g, a) in self.terms() {
            acc = acc + a * other.amplitude(g).conj();
        }
        Ok(acc)
    }

    pub fn norm(&self) -> T {
        self.amplitudes
            .values()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
            .sqrt()
    }

    /// Amplitude of the identity element.
    pub fn trace(&self) -> Complex<T> {
        self.amplitude(0)
    }

    pub fn support(&self) -> Support {
        Support(self.amplitudes.keys().copied().collect())
    }

    /// k-fold action of the group generator, done in one pass by shifting
    /// every element k steps along the generator cycle.
    pub fn generator_power(&self, k: u64) -> Result<Self> {
        let group = self.group()?;
        let mut out = Self::zero(self.level)?;
        for (g, amp) in self.terms() {
            let pos = group.position(g)?;
            out.insert(group.element_at(pos + k), amp)?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        let mut out = GroupVector { level: self.level, amplitudes: BTreeMap::new() };
        for (g, amp) in self.terms() {
            let scaled = amp * factor;
            if scaled.norm_sqr().sqrt() >= T::zero_threshold() {
                out.amplitudes.insert(g, scaled);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_level(other)?;
        let mut out = self.clone();
        for (g, amp) in other.terms() {
            out.insert(g, amp)?;
        }
        Ok(out)
    }

    /// Largest modulus of an amplitude difference; supports need not match.
    pub fn max_amplitude_diff(&self, other: &Self) -> Result<T> {
        self.check_same_level(other)?;
        let mut max = T::zero();
        for g in self
            .amplitudes
            .keys()
            .chain(other.amplitudes.keys())
            .copied()
            .collect::<BTreeSet<_>>()
        {
            let d = (self.amplitude(g) - other.amplitude(g)).norm_sqr().sqrt();
            if d > max {
                max = d;
            }
        }
        Ok(max)
    }

    /// `element:real:imag` triples, elements ascending, 12 significant digits.
    pub fn triples(&self) -> Vec<String> {
        self.terms()
            .map(|(g, a)| format!("{}:{}:{}", g, fmt_sig(a.re), fmt_sig(a.im)))
            .collect()
    }
}

impl<T: Scalar> fmt::Display for GroupVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.triples().join(" "))
    }
}

/// Fixed 12-significant-digit rendering used everywhere a float reaches
/// an output stream, so identical runs produce identical bytes.
pub fn fmt_sig<T: Scalar>(x: T) -> String {
    let v = x.to_f64().unwrap_or(f64::NAN);
    if v == 0.0 {
        return "0".to_string();
    }
    format!("{:.11e}", v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::orbit;

    type V = GroupVector<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn translate_by_identity_and_table_cases() {
        let d1 = V::delta(2, 1).unwrap();
        assert_eq!(d1.left_translate(2).unwrap(), V::delta(2, 3).unwrap());
        assert_eq!(d1.left_translate(0).unwrap(), d1);
        let d4 = V::delta(3, 4).unwrap();
        assert_eq!(d4.left_translate(4).unwrap(), V::delta(3, 2).unwrap());
    }

    #[test]
    fn convolution_of_point_masses() {
        for (a, b) in [(1u32, 1u32), (2, 3), (0, 2)] {
            let prod = crate::tower::multiply(2, a, b).unwrap();
            let got = V::delta(2, a).unwrap().convolve(&V::delta(2, b).unwrap()).unwrap();
            assert_eq!(got, V::delta(2, prod).unwrap());
        }
        // identity element and the two-element group
        let v = V::from_terms(2, [(1, c(0.5, 0.0)), (3, c(0.0, -0.25))]).unwrap();
        assert_eq!(V::delta(2, 0).unwrap().convolve(&v).unwrap(), v);
        let d1 = V::delta(1, 1).unwrap();
        assert_eq!(d1.convolve(&d1).unwrap(), V::delta(1, 0).unwrap());
    }

    #[test]
    fn inner_norm_trace_support() {
        let dg = V::delta(3, 5).unwrap();
        let dh = V::delta(3, 2).unwrap();
        assert_eq!(dg.inner(&dg).unwrap(), c(1.0, 0.0));
        assert_eq!(dg.inner(&dh).unwrap(), c(0.0, 0.0));
        assert_eq!(V::zero(3).unwrap().norm(), 0.0);
        assert_eq!(dg.norm(), 1.0);

        let s = 1.0 / 2f64.sqrt();
        let v = V::from_terms(1, [(0, c(s, 0.0)), (1, c(s, 0.0))]).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-15);
        assert!((v.inner(&v).unwrap().re - v.norm().powi(2)).abs() < 1e-15);

        assert_eq!(V::delta(2, 0).unwrap().trace(), c(1.0, 0.0));
        assert_eq!(V::delta(2, 3).unwrap().trace(), c(0.0, 0.0));

        assert!(V::zero(2).unwrap().support().is_empty());
        assert_eq!(V::delta(2, 3).unwrap().support().0, BTreeSet::from([3]));
        let w = V::from_terms(2, [(0, c(1.0, 0.0)), (2, c(0.5, 0.0))]).unwrap();
        assert_eq!(w.support().0, BTreeSet::from([0, 2]));
    }

    #[test]
    fn trace_of_convolution_detects_inverses() {
        let g = Group::new(3).unwrap();
        for a in 0..8u32 {
            for b in 0..8u32 {
                let t = V::delta(3, a)
                    .unwrap()
                    .convolve(&V::delta(3, b).unwrap())
                    .unwrap()
                    .trace();
                let expected = if g.inverse(a).unwrap() == b { 1.0 } else { 0.0 };
                assert_eq!(t, c(expected, 0.0));
            }
        }
    }

    #[test]
    fn generator_power_follows_orbit() {
        let d1 = V::delta(3, 1).unwrap();
        assert_eq!(d1.generator_power(0).unwrap(), d1);
        assert_eq!(d1.generator_power(1).unwrap(), V::delta(3, 5).unwrap());
        assert_eq!(d1.generator_power(8).unwrap(), d1);

        let o = orbit(3, 1).unwrap();
        for (k, &e) in o.elements.iter().enumerate() {
            assert_eq!(d1.generator_power(k as u64).unwrap(), V::delta(3, e).unwrap());
        }
    }

    #[test]
    fn generator_power_matches_repeated_translation() {
        for level in 1..=5u32 {
            let g = Group::new(level).unwrap();
            let mu = g.generator_element();
            let v = V::from_terms(level, [(0, c(0.6, 0.1)), (1, c(0.0, -0.8))]).unwrap();
            let mut translated = v.clone();
            for k in 0..=(1u64 << level) {
                assert_eq!(v.generator_power(k).unwrap(), translated);
                translated = translated.left_translate(mu).unwrap();
            }
        }
    }

    #[test]
    fn normal_form_drops_tiny_amplitudes() {
        let v = V::from_terms(2, [(1, c(1e-16, 0.0)), (2, c(0.5, 0.0))]).unwrap();
        assert_eq!(v.term_count(), 1);
        assert!(!v.support().contains(1));

        // cancellation also leaves no residue behind
        let w = V::from_terms(2, [(3, c(0.25, 0.0)), (3, c(-0.25, 0.0))]).unwrap();
        assert!(w.support().is_empty());
    }

    #[test]
    fn mismatched_levels_are_rejected() {
        let a = V::delta(2, 1).unwrap();
        let b = V::delta(3, 1).unwrap();
        assert!(matches!(a.inner(&b), Err(Error::LevelMismatch { .. })));
        assert!(matches!(a.convolve(&b), Err(Error::LevelMismatch { .. })));
        assert!(matches!(a.left_translate(7), Err(Error::ElementRange { .. })));
    }
}
