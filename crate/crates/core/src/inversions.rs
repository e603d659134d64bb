//! Multiset permutations, their inversion counts, and the distribution
//! `I_n(d; k)` of inversions over all permutations of a multiset.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::denumerant::{generalized_binomial, PsiTable};
use crate::error::{Error, Result};
use crate::polycore::{IntPoly, Rational};
use crate::qanalogue::{q_int, q_multinomial, FlagShape};

/// A permutation of the multiset `{1^{e_1}, ..., (r+1)^{e_{r+1}}}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetWord {
    letters: Vec<usize>,
}

impl MultisetWord {
    pub fn new(shape: &FlagShape, letters: Vec<usize>) -> Result<Self> {
        let blocks = shape.blocks();
        if letters.len() != shape.n() {
            return Err(Error::invalid(format!(
                "word has length {}, expected {}",
                letters.len(),
                shape.n()
            )));
        }
        let mut seen = vec![0usize; blocks.len()];
        for &l in &letters {
            if l == 0 || l > blocks.len() {
                return Err(Error::invalid(format!("letter {l} outside 1..={}", blocks.len())));
            }
            seen[l - 1] += 1;
        }
        if seen != blocks {
            return Err(Error::invalid(format!(
                "letter multiplicities {seen:?} do not match blocks {blocks:?}"
            )));
        }
        Ok(MultisetWord { letters })
    }

    /// Weakly increasing word of the shape (zero inversions).
    pub fn sorted(shape: &FlagShape) -> Self {
        let letters = shape
            .blocks()
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i + 1, e))
            .collect();
        MultisetWord { letters }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Inversion count by merge sort, `O(n log n)`.
    pub fn inversions(&self) -> u64 {
        let mut buf = self.letters.clone();
        let mut scratch = vec![0; buf.len()];
        merge_count(&mut buf, &mut scratch)
    }

    /// Inversion count by checking every pair.
    pub fn inversions_naive(&self) -> u64 {
        let l = &self.letters;
        let mut count = 0;
        for i in 0..l.len() {
            for j in i + 1..l.len() {
                if l[i] > l[j] {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Debug for MultisetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultisetWord({self})")
    }
}

impl fmt::Display for MultisetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.letters.iter().any(|&l| l > 9) { "," } else { "" };
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

fn merge_count(v: &mut [usize], scratch: &mut [usize]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (a, b) = v.split_at_mut(mid);
        let (sa, sb) = scratch.split_at_mut(mid);
        merge_count(a, sa) + merge_count(b, sb)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        // ties stay in order; equal letters never form an inversion
        if v[j] < v[i] {
            scratch[k] = v[j];
            count += (mid - i) as u64;
            j += 1;
        } else {
            scratch[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&scratch[..n]);
    count
}

/// Number of inverted pairs of `w`.
pub fn inversion_count(w: &MultisetWord) -> u64 {
    w.inversions()
}

/// Lexicographic stream over every permutation of a multiset.
#[derive(Clone, Debug)]
pub struct Words {
    next: Option<Vec<usize>>,
}

impl Iterator for Words {
    type Item = MultisetWord;

    fn next(&mut self) -> Option<MultisetWord> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(MultisetWord { letters: cur })
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Every permutation of the shape's multiset, once each, in lexicographic
/// order. Fails when there are more than `cap` of them.
pub fn enumerate_words(shape: &FlagShape, cap: u64) -> Result<Words> {
    let count = shape.multinomial();
    if count > BigUint::from(cap) {
        return Err(Error::cap("multiset permutation enumeration", count, cap));
    }
    Ok(Words {
        next: Some(MultisetWord::sorted(shape).letters),
    })
}

/// `sum_{w} x^{inv(w)}` by enumerating every permutation of the multiset.
pub fn inversion_distribution_oracle(shape: &FlagShape, cap: u64) -> Result<IntPoly> {
    let mut hist = vec![0u64; shape.nu() + 1];
    for w in enumerate_words(shape, cap)? {
        hist[w.inversions() as usize] += 1;
    }
    Ok(IntPoly::from_coeffs(hist.into_iter().map(BigInt::from).collect()))
}

/// The row `I_n(d; 0), ..., I_n(d; nu(d))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MahonianTable {
    shape: FlagShape,
    counts: Vec<BigUint>,
}

impl MahonianTable {
    fn from_poly(shape: FlagShape, poly: &IntPoly) -> Self {
        let counts = poly
            .coeffs()
            .iter()
            .map(|c| c.to_biguint().expect("inversion counts are nonnegative"))
            .collect();
        MahonianTable { shape, counts }
    }

    pub fn shape(&self) -> &FlagShape {
        &self.shape
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `I_n(d; k)`, zero outside `0..=nu(d)`.
    pub fn get(&self, k: usize) -> BigUint {
        self.counts.get(k).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::from_coeffs(self.counts.iter().cloned().map(BigInt::from).collect())
    }

    pub fn as_signed(&self) -> Vec<BigInt> {
        self.counts.iter().cloned().map(BigInt::from).collect()
    }
}

/// `I_n(d; k)` for all `k`, read off the q-multinomial coefficients.
pub fn mahonian_table(shape: &FlagShape) -> MahonianTable {
    MahonianTable::from_poly(shape.clone(), &q_multinomial(shape))
}

/// `I_n(k)` for all `k`, from `(1)(1+t)...(1+t+...+t^{n-1})`.
pub fn full_mahonian(n: usize) -> Result<MahonianTable> {
    let shape = FlagShape::full(n)?;
    let poly: IntPoly = (1..=n).map(q_int).product();
    Ok(MahonianTable::from_poly(shape, &poly))
}

/// Result of [`refinement_recurrence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementRecovery {
    /// Block-internal shapes `d[i]*`, one per block of the coarse shape.
    pub block_shapes: Vec<FlagShape>,
    /// `c_0 = 1, c_1, ...`: the coefficients of the product of the
    /// block-internal distributions.
    pub convolver: Vec<BigUint>,
    pub table: MahonianTable,
}

/// Recovers `I_n(d; .)` from the distribution of a refinement `d*` by
/// peeling off the block-internal distributions:
/// `I_n(d; k) = I_n(d*; k) - sum_{m=1}^{k} c_m I_n(d; k - m)`.
pub fn refinement_recurrence(shape: &FlagShape, refined: &FlagShape) -> Result<RefinementRecovery> {
    if !shape.is_refined_by(refined) {
        return Err(Error::invalid(format!("{refined} is not a refinement of {shape}")));
    }
    let bounds = shape.boundaries();
    let block_shapes: Vec<FlagShape> = bounds
        .windows(2)
        .map(|w| {
            let inner = refined
                .d()
                .iter()
                .filter(|&&x| x > w[0] && x < w[1])
                .map(|&x| x - w[0])
                .collect();
            FlagShape::new(w[1] - w[0], inner).expect("block-internal shape is valid")
        })
        .collect();

    // sum over j in A_m of prod_i I_{e_i}(d[i]*; j_i), i.e. the product
    // of the block generating functions
    let convolver: Vec<BigInt> = block_shapes
        .iter()
        .map(|s| mahonian_table(s).to_poly())
        .product::<IntPoly>()
        .into_coeffs();

    let fine = mahonian_table(refined);
    let top = fine.counts().len();
    let mut recovered: Vec<BigInt> = Vec::with_capacity(top);
    for k in 0..top {
        let mut v = BigInt::from(fine.get(k));
        for m in 1..=k.min(convolver.len() - 1) {
            v -= &convolver[m] * &recovered[k - m];
        }
        recovered.push(v);
    }
    let poly = IntPoly::from_coeffs(recovered);
    if poly.coeffs().iter().any(Signed::is_negative) {
        return Err(Error::invalid("refinement recurrence produced a negative count"));
    }
    Ok(RefinementRecovery {
        block_shapes,
        convolver: convolver
            .into_iter()
            .map(|c| c.to_biguint().expect("nonnegative"))
            .collect(),
        table: MahonianTable::from_poly(shape.clone(), &poly),
    })
}

/// Rational lower and upper bounds on `I_n(d; k)` obtained by bounding
/// each denumerant in the signed convolution `sum psi_n(i) D(k - i)`.
///
/// With `P = {0 <= i <= k : psi_n(i) > 0}` and `N = {1 <= i <= k : psi_n(i) < 0}`,
/// the lower bound uses the small binomial `C(n-1+k-i, n-1)` on `P` and
/// the shifted one `C(n-1+eta+k-i, n-1)` on `N`; the upper bound swaps them.
/// Both are divided by `prod e_i!`.
pub fn inv_bounds(shape: &FlagShape, k: usize) -> (Rational, Rational) {
    let n = shape.n() as i64;
    let eta = shape.eta() as i64;
    let k = k as i64;
    let psi = PsiTable::new(shape.n());
    let mut low = BigInt::zero();
    let mut high = BigInt::zero();
    for i in 0..=k {
        let c = psi.get(i);
        if c.is_zero() {
            continue;
        }
        let plain = &c * generalized_binomial(n - 1 + k - i, n - 1);
        let shifted = &c * generalized_binomial(n - 1 + eta + k - i, n - 1);
        if c.is_positive() {
            low += plain;
            high += shifted;
        } else {
            low += shifted;
            high += plain;
        }
    }
    let denom = BigInt::from(shape.block_factorial_product());
    (
        Rational::new(low, denom.clone()).expect("nonzero"),
        Rational::new(high, denom).expect("nonzero"),
    )
}

/// Indices `k` with `seq[k]^2 < seq[k-1] * seq[k+1]`.
pub fn log_concavity_scan(seq: &[BigInt]) -> Vec<usize> {
    (1..seq.len().saturating_sub(1))
        .filter(|&k| &seq[k] * &seq[k] < &seq[k - 1] * &seq[k + 1])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape(n: usize, d: &[usize]) -> FlagShape {
        FlagShape::new(n, d.to_vec()).unwrap()
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn word_validation() {
        let s = shape(3, &[2]);
        assert!(MultisetWord::new(&s, vec![1, 2, 1]).is_ok());
        assert!(MultisetWord::new(&s, vec![1, 2, 2]).is_err());
        assert!(MultisetWord::new(&s, vec![1, 2]).is_err());
        assert!(MultisetWord::new(&s, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let words: Vec<String> = enumerate_words(&shape(3, &[2]), 100)
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["112", "121", "211"]);
        let words: Vec<String> = enumerate_words(&shape(2, &[1]), 100)
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["12", "21"]);
        assert_eq!(enumerate_words(&shape(4, &[2]), 100).unwrap().count(), 6);
        let err = enumerate_words(&FlagShape::full(8).unwrap(), 1000).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn inversion_examples() {
        let s = shape(3, &[2]);
        let w = MultisetWord::new(&s, vec![2, 1, 1]).unwrap();
        assert_eq!(w.inversions(), 2);
        assert_eq!(w.inversions_naive(), 2);
        assert_eq!(MultisetWord::sorted(&s).inversions(), 0);
        // blocks in reverse order, each increasing: every cross pair inverted
        let s = shape(7, &[2, 4]);
        let w = MultisetWord::new(&s, vec![3, 3, 3, 2, 2, 1, 1]).unwrap();
        assert_eq!(w.inversions(), s.nu() as u64);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            inversion_distribution_oracle(&shape(3, &[2]), 100).unwrap(),
            IntPoly::from_i64s(&[1, 1, 1])
        );
        assert_eq!(
            inversion_distribution_oracle(&shape(3, &[1, 2]), 100).unwrap(),
            IntPoly::from_i64s(&[1, 2, 2, 1])
        );
        assert_eq!(
            inversion_distribution_oracle(&shape(2, &[1]), 100).unwrap(),
            IntPoly::from_i64s(&[1, 1])
        );
    }

    #[test]
    fn oracle_matches_q_multinomial_small() {
        for n in 1..=6 {
            for s in FlagShape::all(n) {
                assert_eq!(
                    inversion_distribution_oracle(&s, 1 << 20).unwrap(),
                    q_multinomial(&s),
                    "{s}"
                );
            }
        }
    }

    #[test]
    fn mahonian_known_values() {
        let t = mahonian_table(&shape(7, &[2, 4]));
        assert_eq!(&t.counts()[..5], &big(&[1, 2, 5, 8, 13])[..]);
        let full = mahonian_table(&FlagShape::full(10).unwrap());
        assert_eq!(full.get(12), BigUint::from(47043u32));
        assert_eq!(full.get(20), BigUint::from(230131u32));
        assert_eq!(full_mahonian(10).unwrap(), full);
        assert_eq!(full_mahonian(3).unwrap().counts(), &big(&[1, 2, 2, 1])[..]);
        assert!(full_mahonian(0).is_err());
    }

    #[test]
    fn table_invariants() {
        for n in 1..=8 {
            for s in FlagShape::all(n) {
                let t = mahonian_table(&s);
                assert_eq!(t.counts().len(), s.nu() + 1);
                assert_eq!(t.total(), s.multinomial());
                let c = t.counts();
                assert!(c.iter().all(|x| !x.is_zero()));
                assert!(c.iter().eq(c.iter().rev()));
            }
        }
    }

    #[test]
    fn full_table_row_recurrence() {
        for n in 2..=12 {
            let prev = full_mahonian(n - 1).unwrap();
            let cur = full_mahonian(n).unwrap();
            for k in 0..cur.counts().len() {
                let lo = (k + 1).saturating_sub(n);
                let s: BigUint = (lo..=k).map(|j| prev.get(j)).sum();
                assert_eq!(cur.get(k), s, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn refinement_examples() {
        let coarse = shape(3, &[2]);
        let fine = shape(3, &[1, 2]);
        let rec = refinement_recurrence(&coarse, &fine).unwrap();
        assert_eq!(rec.convolver, big(&[1, 1]));
        assert_eq!(rec.table.counts(), &big(&[1, 1, 1])[..]);

        let same = refinement_recurrence(&coarse, &coarse).unwrap();
        assert_eq!(same.convolver, big(&[1]));
        assert_eq!(same.table, mahonian_table(&coarse));

        assert!(refinement_recurrence(&fine, &coarse).is_err());
        assert!(refinement_recurrence(&coarse, &shape(4, &[1, 2])).is_err());
    }

    #[test]
    fn bounds_known_values() {
        let (_, up) = inv_bounds(&shape(5, &[1, 2]), 6);
        assert_eq!(up, Rational::from_integer(104));
        let (_, up) = inv_bounds(&shape(5, &[1, 2, 3]), 6);
        assert_eq!(up, Rational::from_integer(77));
        let (_, up) = inv_bounds(&shape(5, &[2]), 6);
        assert!(up < Rational::from_integer(84));
    }

    #[test]
    fn bounds_collapse_for_full_shape() {
        for n in 1..=8 {
            let full = full_mahonian(n).unwrap();
            let s = FlagShape::full(n).unwrap();
            for k in 0..=n * (n - 1) / 2 {
                let (lo, up) = inv_bounds(&s, k);
                let want = Rational::from_integer(BigInt::from(full.get(k)));
                assert_eq!(lo, want);
                assert_eq!(up, want);
            }
        }
    }

    #[test]
    fn log_concavity_examples() {
        let seq: Vec<BigInt> = [1, 2, 5, 8, 13].iter().map(|&x| BigInt::from(x)).collect();
        // 2^2 < 1*5 and 8^2 < 5*13
        assert_eq!(log_concavity_scan(&seq), vec![1, 3]);
        let whole = mahonian_table(&shape(7, &[2, 4])).as_signed();
        assert_eq!(log_concavity_scan(&whole), vec![1, 3, 13, 15]);
        let flat = vec![BigInt::from(4); 6];
        assert!(log_concavity_scan(&flat).is_empty());
        assert!(log_concavity_scan(&[]).is_empty());
        for n in 2..=10 {
            assert!(log_concavity_scan(&full_mahonian(n).unwrap().as_signed()).is_empty());
        }
    }

    proptest! {
        #[test]
        fn merge_and_naive_counts_agree(letters in prop::collection::vec(1usize..5, 0..40)) {
            let w = MultisetWord { letters };
            prop_assert_eq!(w.inversions(), w.inversions_naive());
        }
    }
}
