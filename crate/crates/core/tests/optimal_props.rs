mod common;

use common::{homogeneous_poly, homogeneous_rule, invertible, q};
use optcalc::commrule::{minus_rule, single_power_rule, split_rule, CommRule};
use optcalc::freealg::{NCPoly, Subspace};
use optcalc::optimal::{compute_u, ideal_component, invariant_closure, optimal_ideal};
use proptest::collection::vec;
use proptest::prelude::*;

const MAX_DEGREE: usize = 4;

/// Random sparse rules mixed with rules whose optimal ideal is known to be large.
fn interesting_rule() -> impl Strategy<Value = CommRule> {
    let c = |v: i64| q().from_i64(v);
    prop_oneof![
        4 => (2usize..=3).prop_flat_map(homogeneous_rule),
        1 => Just(split_rule(c(1), c(1)).unwrap()),
        1 => Just(single_power_rule(&[c(1)]).unwrap()),
        1 => Just(minus_rule(2, q())),
    ]
}

fn u_components(rule: &CommRule, comps: &[Subspace]) -> Vec<Subspace> {
    (2..=comps.len()).map(|s| compute_u(rule, s, &comps[s - 2]).unwrap()).collect()
}

/// Breadth-first orbit of `w` under the entries of `A`, pruned to new
/// directions; true once some element leaves `u`.
fn orbit_escapes(rule: &CommRule, w: &NCPoly, u: &Subspace) -> bool {
    let s = u.degree();
    let mut seen = Subspace::span(rule.n(), q(), s, std::slice::from_ref(w)).unwrap();
    let mut frontier = vec![w.clone()];
    for _ in 0..=u.dim() {
        let mut next = Vec::new();
        for x in &frontier {
            for e in rule.apply(x).unwrap().entries() {
                if !u.contains(e).unwrap() {
                    return true;
                }
                if !seen.contains(e).unwrap() {
                    seen = Subspace::span(rule.n(), q(), s, &[seen.basis(), vec![e.clone()]].concat()).unwrap();
                    next.push(e.clone());
                }
            }
        }
        if next.is_empty() {
            return false;
        }
        frontier = next;
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn components_are_invariant_and_inside_u(rule in interesting_rule()) {
        let filt = optimal_ideal(&rule, MAX_DEGREE).unwrap();
        let comps = filt.components();
        prop_assert!(comps[0].is_zero());
        for (idx, u) in u_components(&rule, comps).iter().enumerate() {
            let i_s = &comps[idx + 1];
            prop_assert!(i_s.is_subspace_of(u).unwrap());
            for b in i_s.basis() {
                let a = rule.apply(&b).unwrap();
                for e in a.entries() {
                    prop_assert!(i_s.contains(e).unwrap());
                }
            }
        }
    }

    #[test]
    fn components_form_an_ideal(rule in interesting_rule()) {
        let filt = optimal_ideal(&rule, MAX_DEGREE).unwrap();
        let n = rule.n();
        for s in 2..=MAX_DEGREE {
            let (lower, upper) = (filt.component(s - 1).unwrap(), filt.component(s).unwrap());
            for b in lower.basis() {
                for i in 0..n {
                    let x = NCPoly::var(n, q(), i);
                    prop_assert!(upper.contains(&(&x * &b)).unwrap());
                    prop_assert!(upper.contains(&(&b * &x)).unwrap());
                }
            }
        }
    }

    /// Any `w ∈ U_s \ I_s` has an orbit under the entries of `A` that leaves
    /// `U_s` within `dim U_s` steps; otherwise `I_s + span(orbit)` would be a
    /// larger invariant subspace of `U_s`.
    #[test]
    fn components_are_maximal(rule in interesting_rule(), mix in vec(-2i64..=2, 1..=8)) {
        let filt = optimal_ideal(&rule, MAX_DEGREE).unwrap();
        for (idx, u) in u_components(&rule, filt.components()).iter().enumerate() {
            let i_s = &filt.components()[idx + 1];
            let basis = u.basis();
            let mut w = NCPoly::zero(rule.n(), q());
            for (b, c) in basis.iter().zip(mix.iter().cycle()) {
                w = &w + &b.scale(&q().from_i64(*c)).unwrap();
            }
            let candidates = std::iter::once(w).chain(basis);
            for w in candidates.filter(|w| !i_s.contains(w).unwrap()) {
                prop_assert!(orbit_escapes(&rule, &w, u), "orbit of {} stays in U", w);
            }
        }
    }

    /// An element whose invariant closure has every partial in `I_{s-1}`
    /// vanishes in the optimal algebra.
    #[test]
    fn witnesses_lie_in_the_ideal(
        (rule, s, v, from_ideal) in interesting_rule().prop_flat_map(|r| {
            let n = r.n();
            (Just(r), 2usize..=3).prop_flat_map(move |(r, s)| (Just(r), Just(s), homogeneous_poly(n, s, 4), vec(-2i64..=2, 6)))
        })
    ) {
        let filt = optimal_ideal(&rule, s).unwrap();
        let (lower, i_s) = (filt.component(s - 1).unwrap(), filt.component(s).unwrap());
        let u = compute_u(&rule, s, lower).unwrap();
        let mut in_ideal = NCPoly::zero(rule.n(), q());
        for (b, c) in i_s.basis().iter().zip(&from_ideal) {
            in_ideal = &in_ideal + &b.scale(&q().from_i64(*c)).unwrap();
        }
        for w in [v, in_ideal] {
            if w.is_zero() {
                continue;
            }
            let closure = invariant_closure(&rule, &w).unwrap();
            if closure.is_subspace_of(&u).unwrap() {
                prop_assert!(i_s.contains(&w).unwrap());
            } else {
                prop_assert!(!i_s.contains(&w).unwrap());
            }
        }
    }

    #[test]
    fn dimensions_are_basis_independent(
        (rule, alpha) in (2usize..=3).prop_flat_map(|n| (homogeneous_rule(n), invertible(n)))
    ) {
        let before = optimal_ideal(&rule, MAX_DEGREE).unwrap().dims();
        let after = optimal_ideal(&rule.change_basis(&alpha).unwrap(), MAX_DEGREE).unwrap().dims();
        prop_assert_eq!(before, after);
    }
}

#[test]
fn named_relations_match_for_split_and_single_power_rules() {
    let c = |v: i64| q().from_i64(v);
    let x = |i: usize| NCPoly::var(2, q(), i);
    let cases = [
        (split_rule(c(1), c(1)).unwrap(), vec![&x(0) * &x(1), &x(1) * &x(0)]),
        (single_power_rule(&[c(1)]).unwrap(), vec![&x(0) * &x(1), &x(1) * &x(0), &x(1) * &x(1)]),
    ];
    for (rule, relations) in cases {
        let filt = optimal_ideal(&rule, 6).unwrap();
        for s in 1..=6 {
            let oracle = ideal_component(2, q(), &relations, s).unwrap();
            assert!(filt.component(s).unwrap().equals(&oracle).unwrap(), "degree {s}");
        }
    }
}
