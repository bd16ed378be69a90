//! Two sequence properties, their decision procedures, and an exhaustive
//! search for finite sequences possessing them.
//!
//! *Cobweb admissibility* asks that every coefficient `(n over k)_F` be a
//! positive integer; *GCD-morphism* asks that `gcd(F_n, F_m) = F_{gcd(n,m)}`.
//! Neither property is decidable from a finite prefix for an arbitrary
//! infinite sequence, so [`check_admissible`] and [`check_gcd_morphic`]
//! verify every instance *up to a bound* and report the first violation as a
//! witness.  The `search_*` functions enumerate all finite sequences of a
//! given length, term-by-term, under hard ceilings.
//!
//! Both properties are prefix-monotone — a violation involves only indices
//! up to some `n` and survives every extension — which is what makes the
//! backtracking search exact: a pruned branch cannot contain solutions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{fnomial, is_integral};
use crate::error::{Error, Result};
use crate::sequence::FSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PropertyKind {
    CobwebAdmissible,
    GcdMorphic,
}

impl PropertyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PropertyKind::CobwebAdmissible => "cobweb-admissible",
            PropertyKind::GcdMorphic => "gcd-morphic",
        }
    }
}

impl std::fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The first violation found, in scan order (`n` ascending, then `k`/`m`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    NonIntegralFnomial { n: u64, k: u64, value: BigRational },
    GcdMismatch { n: u64, m: u64, gcd_value: BigInt, expected: BigInt },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub property: PropertyKind,
    pub bound: u64,
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// Is every `(n over k)_F` with `n <= bound` an integer?
pub fn check_admissible(f: &FSequence, bound: u64) -> Result<PropertyVerdict> {
    for n in 0..=bound {
        for k in 0..=n {
            let value = fnomial(f, n, k)?;
            if !is_integral(&value) {
                return Ok(PropertyVerdict {
                    property: PropertyKind::CobwebAdmissible,
                    bound,
                    holds: false,
                    witness: Some(Witness::NonIntegralFnomial { n, k, value }),
                });
            }
        }
    }
    Ok(PropertyVerdict {
        property: PropertyKind::CobwebAdmissible,
        bound,
        holds: true,
        witness: None,
    })
}

/// Does `gcd(F_n, F_m) = F_{gcd(n,m)}` hold for all `1 <= m < n <= bound`?
pub fn check_gcd_morphic(f: &FSequence, bound: u64) -> Result<PropertyVerdict> {
    for n in 2..=bound {
        let fn_val = f.term(n)?;
        for m in 1..n {
            let fm_val = f.term(m)?;
            let gcd_value = fn_val.gcd(&fm_val);
            let expected = f.term(n.gcd(&m))?;
            if gcd_value != expected {
                return Ok(PropertyVerdict {
                    property: PropertyKind::GcdMorphic,
                    bound,
                    holds: false,
                    witness: Some(Witness::GcdMismatch {
                        n,
                        m,
                        gcd_value,
                        expected,
                    }),
                });
            }
        }
    }
    Ok(PropertyVerdict {
        property: PropertyKind::GcdMorphic,
        bound,
        holds: true,
        witness: None,
    })
}

pub const SEARCH_LEN_CEILING: usize = 8;
pub const SEARCH_TERM_CEILING: u64 = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub property: PropertyKind,
    pub max_len: usize,
    pub max_term: u64,
    pub prefix: Vec<u64>,
    /// Sequences of length exactly `max_len`, lexicographically ascending.
    pub found: Vec<Vec<u64>>,
    /// False when `limit` cut the enumeration short.
    pub exhausted: bool,
}

/// All sequences `(F_1, .., F_max_len)` with terms in `1..=max_term` whose
/// every F-nomial coefficient is integral.
pub fn search_admissible(
    max_len: usize,
    max_term: u64,
    prefix: &[u64],
    limit: Option<usize>,
) -> Result<SearchReport> {
    run_search(PropertyKind::CobwebAdmissible, max_len, max_term, prefix, limit)
}

/// All sequences `(F_1, .., F_max_len)` with terms in `1..=max_term`
/// satisfying the GCD-morphism equation at every index pair.
pub fn search_gcd_morphic(
    max_len: usize,
    max_term: u64,
    prefix: &[u64],
    limit: Option<usize>,
) -> Result<SearchReport> {
    run_search(PropertyKind::GcdMorphic, max_len, max_term, prefix, limit)
}

/// Does the constraint set involving the *last* term of `terms` hold?  All
/// earlier constraints were checked when the earlier terms were placed.
fn last_term_ok(property: PropertyKind, terms: &[u64]) -> bool {
    let n = terms.len();
    match property {
        PropertyKind::CobwebAdmissible => {
            // terms stay under SEARCH_TERM_CEILING^SEARCH_LEN_CEILING, well
            // inside u128
            for k in 0..n {
                let falling: u128 = terms[k..n].iter().map(|&t| t as u128).product();
                let factorial: u128 = terms[..n - k].iter().map(|&t| t as u128).product();
                if falling % factorial != 0 {
                    return false;
                }
            }
            true
        }
        PropertyKind::GcdMorphic => {
            let fn_val = terms[n - 1];
            (1..n).all(|m| fn_val.gcd(&terms[m - 1]) == terms[n.gcd(&m) - 1])
        }
    }
}

fn dfs_search(
    property: PropertyKind,
    max_len: usize,
    max_term: u64,
    terms: &mut Vec<u64>,
    found: &mut Vec<Vec<u64>>,
    remaining: &mut Option<usize>,
) -> bool {
    if remaining.is_some_and(|r| r == 0) {
        return false; // truncated
    }
    if terms.len() == max_len {
        found.push(terms.clone());
        if let Some(r) = remaining {
            *r -= 1;
        }
        return true;
    }
    for value in 1..=max_term {
        terms.push(value);
        let keep = last_term_ok(property, terms);
        let complete = !keep || dfs_search(property, max_len, max_term, terms, found, remaining);
        terms.pop();
        if !complete {
            return false;
        }
    }
    true
}

fn run_search(
    property: PropertyKind,
    max_len: usize,
    max_term: u64,
    prefix: &[u64],
    limit: Option<usize>,
) -> Result<SearchReport> {
    if max_len == 0 {
        return Err(Error::InvalidParameter("search length must be positive".into()));
    }
    if max_len > SEARCH_LEN_CEILING {
        return Err(Error::CeilingExceeded(format!(
            "length {max_len} exceeds the ceiling of {SEARCH_LEN_CEILING}"
        )));
    }
    if max_term == 0 {
        return Err(Error::InvalidParameter("search terms must be positive".into()));
    }
    if max_term > SEARCH_TERM_CEILING {
        return Err(Error::CeilingExceeded(format!(
            "term bound {max_term} exceeds the ceiling of {SEARCH_TERM_CEILING}"
        )));
    }
    if prefix.len() > max_len {
        return Err(Error::InvalidParameter(format!(
            "prefix of length {} exceeds the search length {max_len}",
            prefix.len()
        )));
    }
    if let Some(bad) = prefix.iter().find(|&&t| t == 0 || t > max_term) {
        return Err(Error::InvalidParameter(format!(
            "prefix term {bad} is outside 1..={max_term}"
        )));
    }

    let report = |found: Vec<Vec<u64>>, exhausted: bool| SearchReport {
        property,
        max_len,
        max_term,
        prefix: prefix.to_vec(),
        found,
        exhausted,
    };

    // the prefix must itself survive its own incremental checks; both
    // properties are prefix-monotone, so a failing prefix has no extensions
    let mut terms: Vec<u64> = Vec::with_capacity(max_len);
    for &t in prefix {
        terms.push(t);
        if !last_term_ok(property, &terms) {
            return Ok(report(Vec::new(), true));
        }
    }

    if terms.len() == max_len {
        return Ok(report(vec![terms], true));
    }

    if limit.is_none() {
        // fan out over the first free position; ordered concatenation keeps
        // the output identical for any thread count
        let branches: Vec<Vec<Vec<u64>>> = (1..=max_term)
            .into_par_iter()
            .map(|value| {
                let mut local = terms.clone();
                local.push(value);
                let mut found = Vec::new();
                if last_term_ok(property, &local) {
                    dfs_search(property, max_len, max_term, &mut local, &mut found, &mut None);
                }
                found
            })
            .collect();
        let found: Vec<Vec<u64>> = branches.into_iter().flatten().collect();
        return Ok(report(found, true));
    }

    let mut found = Vec::new();
    let mut remaining = limit;
    let exhausted = dfs_search(property, max_len, max_term, &mut terms, &mut found, &mut remaining);
    Ok(report(found, exhausted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn seq(spec: &str) -> FSequence {
        spec.parse().unwrap()
    }

    fn custom(terms: &[u64]) -> FSequence {
        FSequence::custom(terms.iter().map(|&t| BigInt::from(t)).collect(), 1).unwrap()
    }

    #[test]
    fn admissibility_of_builtins() {
        for spec in ["natural", "even", "mult:3", "fibonacci", "gauss:2", "gauss:3", "const:1", "const:2"] {
            let v = check_admissible(&seq(spec), 12).unwrap();
            assert!(v.holds, "{spec}");
            assert!(v.witness.is_none());
        }
    }

    #[test]
    fn odd_numbers_fail_admissibility_at_four_choose_two() {
        let v = check_admissible(&seq("odd"), 10).unwrap();
        assert!(!v.holds);
        match v.witness.unwrap() {
            Witness::NonIntegralFnomial { n, k, value } => {
                assert_eq!((n, k), (4, 2));
                assert_eq!(value, BigRational::new(BigInt::from(35), BigInt::from(3)));
            }
            other => panic!("wrong witness kind: {other:?}"),
        }
    }

    #[test]
    fn gcd_morphism_of_builtins() {
        assert!(check_gcd_morphic(&seq("fibonacci"), 40).unwrap().holds);
        assert!(check_gcd_morphic(&seq("natural"), 40).unwrap().holds);
        assert!(check_gcd_morphic(&seq("even"), 30).unwrap().holds);
        assert!(check_gcd_morphic(&seq("gauss:2"), 20).unwrap().holds);
        assert!(check_gcd_morphic(&seq("const:3"), 10).unwrap().holds);
    }

    #[test]
    fn odd_numbers_fail_gcd_morphism() {
        let v = check_gcd_morphic(&seq("odd"), 10).unwrap();
        match v.witness.unwrap() {
            Witness::GcdMismatch { n, m, gcd_value, expected } => {
                assert_eq!((n, m), (4, 2));
                assert_eq!(gcd_value, BigInt::one()); // gcd(7, 3)
                assert_eq!(expected, BigInt::from(3)); // F_2
            }
            other => panic!("wrong witness kind: {other:?}"),
        }
    }

    #[test]
    fn shifted_naturals_fail_gcd_morphism_immediately() {
        // F_n = n + 1: gcd(F_2, F_1) = gcd(3, 2) = 1 but F_gcd(2,1) = 2
        let f = custom(&[2, 3, 4, 5, 6, 7]);
        let v = check_gcd_morphic(&f, 6).unwrap();
        assert!(!v.holds);
        match v.witness.unwrap() {
            Witness::GcdMismatch { n, m, gcd_value, expected } => {
                assert_eq!((n, m), (2, 1));
                assert_eq!(gcd_value, BigInt::one());
                assert_eq!(expected, BigInt::from(2));
            }
            other => panic!("wrong witness kind: {other:?}"),
        }
    }

    #[test]
    fn admissible_search_length_two() {
        let r = search_admissible(2, 3, &[], None).unwrap();
        assert!(r.exhausted);
        assert_eq!(
            r.found,
            vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 2], vec![3, 3]]
        );
    }

    #[test]
    fn gcd_search_length_two() {
        let r = search_gcd_morphic(2, 2, &[], None).unwrap();
        assert!(r.exhausted);
        assert_eq!(r.found, vec![vec![1, 1], vec![1, 2], vec![2, 2]]);
    }

    #[test]
    fn search_results_revalidate_through_the_full_checker() {
        let r = search_admissible(3, 4, &[], None).unwrap();
        assert!(r.exhausted);
        assert!(!r.found.is_empty());
        for terms in &r.found {
            let f = custom(terms);
            assert!(
                check_admissible(&f, terms.len() as u64).unwrap().holds,
                "search accepted {terms:?} but the checker rejects it"
            );
        }
        let g = search_gcd_morphic(3, 3, &[], None).unwrap();
        for terms in &g.found {
            let f = custom(terms);
            assert!(check_gcd_morphic(&f, terms.len() as u64).unwrap().holds, "{terms:?}");
        }
    }

    #[test]
    fn search_rejected_sequences_really_fail() {
        // complement check on the full length-2 grid
        let r = search_admissible(2, 3, &[], None).unwrap();
        for a in 1..=3u64 {
            for b in 1..=3u64 {
                let listed = r.found.contains(&vec![a, b]);
                let holds = check_admissible(&custom(&[a, b]), 2).unwrap().holds;
                assert_eq!(listed, holds, "({a},{b})");
            }
        }
    }

    #[test]
    fn prefix_narrows_the_search() {
        let r = search_admissible(2, 3, &[2], None).unwrap();
        assert_eq!(r.found, vec![vec![2, 2]]);
        assert!(r.exhausted);

        let full = search_admissible(2, 3, &[1, 3], None).unwrap();
        assert_eq!(full.found, vec![vec![1, 3]]);

        let dead = search_admissible(2, 3, &[2, 3], None).unwrap();
        assert!(dead.found.is_empty());
        assert!(dead.exhausted);
    }

    #[test]
    fn limit_truncates() {
        let r = search_admissible(2, 3, &[], Some(2)).unwrap();
        assert_eq!(r.found, vec![vec![1, 1], vec![1, 2]]);
        assert!(!r.exhausted);

        let all = search_admissible(2, 3, &[], Some(100)).unwrap();
        assert_eq!(all.found.len(), 5);
        assert!(all.exhausted);
    }

    #[test]
    fn ceilings_and_parameter_validation() {
        assert!(matches!(
            search_admissible(9, 3, &[], None),
            Err(Error::CeilingExceeded(_))
        ));
        assert!(matches!(
            search_admissible(2, 31, &[], None),
            Err(Error::CeilingExceeded(_))
        ));
        assert!(matches!(
            search_admissible(0, 3, &[], None),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            search_admissible(2, 3, &[1, 2, 3], None),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            search_admissible(2, 3, &[4], None),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            search_gcd_morphic(3, 0, &[], None),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn incremental_check_agrees_with_fnomial_integrality() {
        // the u128 fast path and the BigRational route must agree
        for terms in [&[2u64, 4, 8][..], &[1, 5, 5][..], &[3, 6, 9][..], &[2, 3, 4][..]] {
            for n in 1..=terms.len() {
                let fast = last_term_ok(PropertyKind::CobwebAdmissible, &terms[..n]);
                let f = custom(terms);
                let slow = (0..=n as u64).all(|k| {
                    is_integral(&fnomial(&f, n as u64, k).unwrap())
                });
                assert_eq!(fast, slow, "{terms:?} at n={n}");
            }
        }
    }
}
