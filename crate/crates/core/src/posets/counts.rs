//! Linear-extension counting, double-poset section counts, and the
//! Sidorenko-type inequality reports.

use itertools::Itertools;

use super::{poset_from_permutation, DoublePoset, Permutation, Poset};
use crate::{Error, Result};

fn below_masks(p: &Poset) -> Vec<u64> {
    (0..p.n())
        .map(|b| {
            (0..p.n())
                .filter(|&a| p.less(a, b))
                .fold(0u64, |m, a| m | 1 << a)
        })
        .collect()
}

fn above_masks(p: &Poset) -> Vec<u64> {
    (0..p.n())
        .map(|a| {
            (0..p.n())
                .filter(|&b| p.less(a, b))
                .fold(0u64, |m, b| m | 1 << b)
        })
        .collect()
}

/// e(P): linear extensions counted by a dynamic program over order ideals,
/// peeling one maximal element at a time.
pub fn count_linear_extensions(p: &Poset) -> u64 {
    let n = p.n();
    assert!(n <= 20, "extension counts overflow u64 beyond n = 20");
    if n == 0 {
        return 1;
    }
    let below = below_masks(p);
    let above = above_masks(p);
    let full = (1u64 << n) - 1;
    let mut counts = vec![0u64; 1 << n];
    counts[0] = 1;
    for s in 1..=full {
        // order ideals only: each member brings everything below it
        if (0..n).any(|b| s >> b & 1 == 1 && below[b] & !s != 0) {
            continue;
        }
        counts[s as usize] = (0..n)
            .filter(|&b| s >> b & 1 == 1 && above[b] & s == 0)
            .map(|b| counts[(s ^ (1 << b)) as usize])
            .sum();
    }
    counts[full as usize]
}

/// e(P|_S) for every subset S of the ground set, indexed by bitmask; the
/// full mask recovers e(P). Peeling a maximal element stays valid on
/// arbitrary subsets because restriction forgets the outside.
pub fn restricted_extension_counts(p: &Poset) -> Vec<u64> {
    let n = p.n();
    assert!(n <= 16, "the subset table is sized for n <= 16");
    let above = above_masks(p);
    let mut counts = vec![0u64; 1 << n];
    counts[0] = 1;
    for s in 1..counts.len() as u64 {
        counts[s as usize] = (0..n)
            .filter(|&b| s >> b & 1 == 1 && above[b] & s == 0)
            .map(|b| counts[(s ^ (1 << b)) as usize])
            .sum();
    }
    counts
}

/// Brute-force oracle: test every bijection in Sₙ directly.
pub fn count_linear_extensions_brute(p: &Poset) -> u64 {
    let n = p.n();
    assert!(n <= 8, "the brute-force oracle enumerates S_n; sized for n <= 8");
    if n == 0 {
        return 1;
    }
    let relations = p.relations();
    (1..=n)
        .permutations(n)
        .filter(|word| relations.iter().all(|&(a, b)| word[a] < word[b]))
        .count() as u64
}

/// e_j(P,Q): permutations τ that restrict to a linear extension of P on
/// J = τ⁻¹{1..j} and, shifted by j, to one of Q on the complement.
/// Computed as the subset convolution Σ_{|J|=j} e(P|_J) · e(Q|_{Jᶜ}).
pub fn e_j_double(d: &DoublePoset, j: usize) -> Result<u64> {
    let n = d.n();
    if j > n {
        return Err(Error::Config(format!(
            "section index {j} exceeds the ground set of size {n}"
        )));
    }
    let gp = restricted_extension_counts(d.p());
    let gq = restricted_extension_counts(d.q());
    let full = (1usize << n) - 1;
    Ok((0..=full)
        .filter(|m| m.count_ones() as usize == j)
        .map(|m| gp[m] * gq[full ^ m])
        .sum())
}

/// The defining count for e_j, straight over Sₙ.
pub fn e_j_double_oracle(d: &DoublePoset, j: usize) -> Result<u64> {
    let n = d.n();
    assert!(n <= 8, "the permutation oracle enumerates S_n; sized for n <= 8");
    if j > n {
        return Err(Error::Config(format!(
            "section index {j} exceeds the ground set of size {n}"
        )));
    }
    let rp = d.p().relations();
    let rq = d.q().relations();
    Ok((1..=n)
        .permutations(n)
        .filter(|word| {
            rp.iter()
                .all(|&(a, b)| !(word[a] <= j && word[b] <= j) || word[a] < word[b])
                && rq
                    .iter()
                    .all(|&(a, b)| !(word[a] > j && word[b] > j) || word[a] < word[b])
        })
        .count() as u64)
}

/// Series-parallel recognition by recursive decomposition: a poset is
/// series-parallel when each piece either is a point, falls apart into
/// incomparable parts, or stacks one part entirely below the rest.
pub fn is_series_parallel(p: &Poset) -> bool {
    let n = p.n();
    assert!(n <= 16, "series-parallel recursion is sized for n <= 16");
    if n == 0 {
        return true;
    }
    split_rec(p, (1u64 << n) - 1)
}

fn split_rec(p: &Poset, mask: u64) -> bool {
    if mask.count_ones() <= 1 {
        return true;
    }
    let component = comparability_component(p, mask);
    if component != mask {
        return split_rec(p, component) && split_rec(p, mask ^ component);
    }
    // a forbidden subposet never straddles a split, so the first split
    // found decides
    let mut lower = (mask - 1) & mask;
    while lower != 0 {
        if all_below(p, lower, mask ^ lower) {
            return split_rec(p, lower) && split_rec(p, mask ^ lower);
        }
        lower = (lower - 1) & mask;
    }
    false
}

fn all_below(p: &Poset, lower: u64, upper: u64) -> bool {
    (0..p.n()).filter(|&a| lower >> a & 1 == 1).all(|a| {
        (0..p.n())
            .filter(|&b| upper >> b & 1 == 1)
            .all(|b| p.less(a, b))
    })
}

fn comparability_component(p: &Poset, mask: u64) -> u64 {
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = vec![start];
    while let Some(a) = frontier.pop() {
        for b in 0..p.n() {
            if mask >> b & 1 == 1 && seen >> b & 1 == 0 && p.comparable(a, b) {
                seen |= 1 << b;
                frontier.push(b);
            }
        }
    }
    seen
}

/// Sizes of the weak-order intervals below and above π, counted through
/// inversion-set containment.
pub fn weak_order_interval_counts(pi: &Permutation) -> (u64, u64) {
    let n = pi.n();
    assert!(n <= 8, "weak-order intervals enumerate S_n; sized for n <= 8");
    if n == 0 {
        return (1, 1);
    }
    let target = inversion_mask(pi.one_line());
    let mut below = 0;
    let mut above = 0;
    for word in (1..=n).permutations(n) {
        let m = inversion_mask(&word);
        if m & !target == 0 {
            below += 1;
        }
        if target & !m == 0 {
            above += 1;
        }
    }
    (below, above)
}

fn inversion_mask(word: &[usize]) -> u64 {
    let n = word.len();
    let mut mask = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if word[i] > word[j] {
                mask |= 1 << ((word[j] - 1) * n + (word[i] - 1));
            }
        }
    }
    mask
}

fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    factorial_u128(n) / factorial_u128(k) / factorial_u128(n - k)
}

/// One permutation pair's Sidorenko data: the plain product bound with its
/// series-parallel equality characterization, the mixed bound at index j,
/// and the weak-order interval form.
#[derive(Clone, Debug)]
pub struct SidorenkoReport {
    pub n: usize,
    pub j: usize,
    /// e(P_π) and e(P_π̄); their product is at least n!.
    pub extensions: u64,
    pub extensions_bar: u64,
    pub product: u128,
    pub factorial: u128,
    /// Product equality happens exactly for series-parallel P_π.
    pub series_parallel: bool,
    pub equality: bool,
    /// e_j(P_π, P_σ) and e_j(P_π̄, P_σ̄); their product is at least
    /// n!·C(n,j). Equality instances are flagged, not classified.
    pub mixed: u64,
    pub mixed_bar: u64,
    pub mixed_product: u128,
    pub mixed_bound: u128,
    pub mixed_equality: bool,
    /// #[0̂, π] and #[π, 1̂] in the weak order; the first equals e(P_π),
    /// the second e(P_π̄).
    pub weak_below: u64,
    pub weak_above: u64,
}

pub fn sidorenko_suite(
    pi: &Permutation,
    sigma: &Permutation,
    j: usize,
) -> Result<SidorenkoReport> {
    if sigma.n() != pi.n() {
        return Err(Error::DimensionMismatch {
            expected: pi.n(),
            got: sigma.n(),
        });
    }
    let n = pi.n();
    let p = poset_from_permutation(pi);
    let p_bar = poset_from_permutation(&pi.bar());
    let q = poset_from_permutation(sigma);
    let q_bar = poset_from_permutation(&sigma.bar());
    let extensions = count_linear_extensions(&p);
    let extensions_bar = count_linear_extensions(&p_bar);
    let mixed = e_j_double(&DoublePoset::new(p.clone(), q)?, j)?;
    let mixed_bar = e_j_double(&DoublePoset::new(p_bar, q_bar)?, j)?;
    let (weak_below, weak_above) = weak_order_interval_counts(pi);
    let factorial = factorial_u128(n);
    let product = extensions as u128 * extensions_bar as u128;
    let mixed_product = mixed as u128 * mixed_bar as u128;
    let mixed_bound = factorial * binomial_u128(n, j);
    Ok(SidorenkoReport {
        n,
        j,
        extensions,
        extensions_bar,
        product,
        factorial,
        series_parallel: is_series_parallel(&p),
        equality: product == factorial,
        mixed,
        mixed_bar,
        mixed_product,
        mixed_bound,
        mixed_equality: mixed_product == mixed_bound,
        weak_below,
        weak_above,
    })
}

/// The section-count sequence of a double poset with its inequalities.
/// Log-concavity holds for every double poset; palindromicity and the
/// extension-count bounds are theorems when the two posets coincide and
/// are reported as observed facts regardless.
#[derive(Clone, Debug)]
pub struct EjSequenceReport {
    pub n: usize,
    /// e_j(P,Q) for j = 0..=n; the coefficient list of E(P,t) when P = Q.
    pub coefficients: Vec<u64>,
    pub log_concave: bool,
    pub same_poset: bool,
    /// e(P).
    pub extensions: u64,
    pub palindromic: bool,
    /// e(P) ≤ e_j ≤ C(n,j)·e(P) for every j.
    pub bounds_hold: bool,
    /// Lower-bound equality at every j; happens exactly for antichains.
    pub lower_equality_all: bool,
    /// Upper-bound equality at every j; happens exactly for chains.
    pub upper_equality_all: bool,
    pub is_antichain: bool,
    pub is_chain: bool,
}

pub fn ej_sequence_props(d: &DoublePoset) -> EjSequenceReport {
    let n = d.n();
    let gp = restricted_extension_counts(d.p());
    let same_poset = d.p() == d.q();
    let gq = if same_poset {
        gp.clone()
    } else {
        restricted_extension_counts(d.q())
    };
    let full = (1usize << n) - 1;
    let mut coefficients = vec![0u64; n + 1];
    for m in 0..=full {
        coefficients[m.count_ones() as usize] += gp[m] * gq[full ^ m];
    }
    let log_concave = (1..n).all(|j| {
        coefficients[j] as u128 * coefficients[j] as u128
            >= coefficients[j - 1] as u128 * coefficients[j + 1] as u128
    });
    let extensions = gp[full];
    let palindromic = (0..=n).all(|j| coefficients[j] == coefficients[n - j]);
    let bounds_hold = (0..=n).all(|j| {
        extensions <= coefficients[j]
            && coefficients[j] as u128 <= binomial_u128(n, j) * extensions as u128
    });
    let lower_equality_all = coefficients.iter().all(|&c| c == extensions);
    let upper_equality_all =
        (0..=n).all(|j| coefficients[j] as u128 == binomial_u128(n, j) * extensions as u128);
    EjSequenceReport {
        n,
        coefficients,
        log_concave,
        same_poset,
        extensions,
        palindromic,
        bounds_hold,
        lower_equality_all,
        upper_equality_all,
        is_antichain: d.p().is_antichain(),
        is_chain: d.p().is_chain(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::vee;
    use super::*;
    use crate::geom::mixed_volume_pair_all;
    use crate::posets::chain_polytope;
    use crate::rat::{factorial_rat, Int, Rat};

    fn en() -> Poset {
        Poset::from_relations(4, &[(0, 2), (1, 2), (1, 3)]).unwrap()
    }

    /// Every labeled poset on n elements, each exactly once.
    fn all_posets(n: usize) -> Vec<Poset> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let mut out = Vec::new();
        for mask in 0u32..1 << pairs.len() {
            let relations: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            if let Ok(p) = Poset::from_relations(n, &relations) {
                if p.relations().len() == relations.len() {
                    out.push(p);
                }
            }
        }
        out
    }

    fn has_induced_n(p: &Poset) -> bool {
        let n = p.n();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if [a, b, c].contains(&d) || [a, b].contains(&c) || a == b {
                            continue;
                        }
                        if p.less(a, c)
                            && p.less(b, c)
                            && p.less(b, d)
                            && !p.comparable(a, b)
                            && !p.comparable(c, d)
                            && !p.comparable(a, d)
                        {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn counts_on_the_named_small_posets() {
        assert_eq!(count_linear_extensions(&Poset::chain(5)), 1);
        assert_eq!(count_linear_extensions(&Poset::antichain(5)), 120);
        assert_eq!(count_linear_extensions(&vee()), 2);
        assert_eq!(count_linear_extensions(&en()), 5);
        assert_eq!(count_linear_extensions(&Poset::antichain(0)), 1);
    }

    #[test]
    fn every_four_element_poset_counts_consistently() {
        let all = all_posets(4);
        assert_eq!(all.len(), 219);
        for p in &all {
            assert_eq!(count_linear_extensions(p), count_linear_extensions_brute(p));
            assert_eq!(is_series_parallel(p), !has_induced_n(p));
        }
    }

    #[test]
    fn restricted_counts_extend_the_full_count() {
        let g = restricted_extension_counts(&en());
        assert_eq!(g[0b1111], 5);
        assert_eq!(g[0b0011], 2);
        assert_eq!(g[0b0110], 1);
        assert_eq!(g[0], 1);
        for pi in Permutation::all(4) {
            let q = poset_from_permutation(&pi);
            assert_eq!(
                restricted_extension_counts(&q)[0b1111],
                count_linear_extensions(&q)
            );
        }
    }

    #[test]
    fn section_counts_on_chains_and_antichains() {
        let a = DoublePoset::new(Poset::antichain(3), Poset::antichain(3)).unwrap();
        for j in 0..=3 {
            assert_eq!(e_j_double(&a, j).unwrap(), 6);
        }
        let c = DoublePoset::new(Poset::chain(3), Poset::chain(3)).unwrap();
        let binoms = [1, 3, 3, 1];
        for (j, b) in binoms.iter().enumerate() {
            assert_eq!(e_j_double(&c, j).unwrap(), *b);
        }
        assert!(matches!(e_j_double(&c, 4), Err(Error::Config(_))));
    }

    #[test]
    fn chain_and_antichain_sections_relate_by_a_factorial() {
        // against a chain the sections sum restricted counts; against an
        // antichain the complement contributes a factorial on top
        let vs_chain = DoublePoset::new(vee(), Poset::chain(3)).unwrap();
        let expected = [1u64, 3, 4, 2];
        for (j, e) in expected.iter().enumerate() {
            assert_eq!(e_j_double(&vs_chain, j).unwrap(), *e);
        }
        let vs_antichain = DoublePoset::new(vee(), Poset::antichain(3)).unwrap();
        for (j, e) in expected.iter().enumerate() {
            assert_eq!(
                e_j_double(&vs_antichain, j).unwrap(),
                factorial_u128(3 - j) as u64 * e
            );
        }
    }

    #[test]
    fn oracle_agrees_with_the_subset_formula() {
        for pi in Permutation::all(3) {
            for sigma in Permutation::all(3) {
                let d = DoublePoset::new(
                    poset_from_permutation(&pi),
                    poset_from_permutation(&sigma),
                )
                .unwrap();
                for j in 0..=3 {
                    assert_eq!(
                        e_j_double(&d, j).unwrap(),
                        e_j_double_oracle(&d, j).unwrap()
                    );
                }
            }
        }
        let d = DoublePoset::new(en(), Poset::chain(4)).unwrap();
        for j in 0..=4 {
            assert_eq!(e_j_double(&d, j).unwrap(), e_j_double_oracle(&d, j).unwrap());
        }
    }

    #[test]
    fn series_parallel_families() {
        assert!(is_series_parallel(&Poset::chain(5)));
        assert!(is_series_parallel(&Poset::antichain(5)));
        assert!(is_series_parallel(&vee()));
        // two disjoint chains: a parallel composition
        assert!(is_series_parallel(
            &Poset::from_relations(4, &[(0, 1), (2, 3)]).unwrap()
        ));
        // the diamond stacks a parallel pair between two points
        assert!(is_series_parallel(
            &Poset::from_relations(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
        ));
        assert!(!is_series_parallel(&en()));
    }

    #[test]
    fn weak_order_intervals() {
        let pi = Permutation::new(vec![2, 1, 3]).unwrap();
        let (below, above) = weak_order_interval_counts(&pi);
        assert_eq!(below, 2);
        assert_eq!(
            above,
            count_linear_extensions(&poset_from_permutation(&pi.bar()))
        );
        assert_eq!(weak_order_interval_counts(&Permutation::identity(4)), (1, 24));
    }

    #[test]
    fn sidorenko_reports_on_the_worked_examples() {
        let pi = Permutation::new(vec![2, 1, 3]).unwrap();
        let r = sidorenko_suite(&pi, &pi, 0).unwrap();
        assert_eq!((r.extensions, r.extensions_bar), (2, 3));
        assert_eq!(r.product, 6);
        assert!(r.equality && r.series_parallel);
        assert_eq!(r.weak_below, r.extensions);

        let twisted = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        let r = sidorenko_suite(&twisted, &twisted, 2).unwrap();
        assert_eq!((r.extensions, r.extensions_bar), (5, 5));
        assert!(r.product > r.factorial);
        assert!(!r.equality && !r.series_parallel);

        let id2 = Permutation::identity(2);
        let r = sidorenko_suite(&id2, &id2, 1).unwrap();
        assert_eq!(r.mixed_product, 4);
        assert_eq!(r.mixed_bound, 4);
        assert!(r.mixed_equality);

        assert!(matches!(
            sidorenko_suite(&id2, &Permutation::identity(3), 0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sidorenko_sweep_over_s4() {
        for pi in Permutation::all(4) {
            for j in 0..=4 {
                let r = sidorenko_suite(&pi, &pi, j).unwrap();
                assert!(r.product >= r.factorial);
                assert_eq!(r.equality, r.series_parallel);
                assert!(r.mixed_product >= r.mixed_bound);
                assert_eq!(r.weak_below, r.extensions);
                assert_eq!(r.weak_above, r.extensions_bar);
            }
        }
    }

    #[test]
    fn sequence_reports() {
        let a =
            ej_sequence_props(&DoublePoset::new(Poset::antichain(3), Poset::antichain(3)).unwrap());
        assert_eq!(a.coefficients, vec![6, 6, 6, 6]);
        assert!(a.log_concave && a.palindromic && a.bounds_hold);
        assert!(a.lower_equality_all && !a.upper_equality_all);
        assert!(a.is_antichain && !a.is_chain);

        let c = ej_sequence_props(&DoublePoset::new(Poset::chain(3), Poset::chain(3)).unwrap());
        assert_eq!(c.coefficients, vec![1, 3, 3, 1]);
        assert!(c.upper_equality_all && !c.lower_equality_all && c.is_chain);

        let v = ej_sequence_props(&DoublePoset::new(vee(), vee()).unwrap());
        assert_eq!(v.coefficients, vec![2, 4, 4, 2]);
        assert!(v.log_concave && v.palindromic && v.bounds_hold);
        assert!(!v.lower_equality_all && !v.upper_equality_all);

        let mixed = ej_sequence_props(&DoublePoset::new(vee(), Poset::chain(3)).unwrap());
        assert!(!mixed.same_poset);
        assert_eq!(mixed.coefficients, vec![1, 3, 4, 2]);
        assert!(mixed.log_concave);
    }

    #[test]
    fn sequence_bounds_characterize_chains_and_antichains_on_four_elements() {
        for p in all_posets(4) {
            let r = ej_sequence_props(&DoublePoset::new(p.clone(), p).unwrap());
            assert!(r.log_concave && r.palindromic && r.bounds_hold);
            assert_eq!(r.lower_equality_all, r.is_antichain);
            assert_eq!(r.upper_equality_all, r.is_chain);
        }
    }

    #[test]
    fn sections_are_mixed_chain_polytope_volumes() {
        let pairs = [
            (vee(), Poset::chain(3)),
            (vee(), vee()),
            (en(), Poset::antichain(4)),
        ];
        for (p, q) in pairs {
            let n = p.n();
            let cp = chain_polytope(&p).unwrap();
            let cq = chain_polytope(&q).unwrap();
            let mixed = mixed_volume_pair_all(cp.polytope(), &cq.polytope().neg()).unwrap();
            let d = DoublePoset::new(p, q).unwrap();
            for (j, value) in mixed.iter().enumerate() {
                let section = Rat::from_integer(Int::from(e_j_double(&d, j).unwrap()));
                assert_eq!(section, factorial_rat(n) * value);
            }
        }
    }
}
