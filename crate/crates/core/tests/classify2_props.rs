mod common;

use common::{homogeneous_rule, q};
use optcalc::calculus::partial;
use optcalc::classify2::{
    build_family, commutator_in_i2, commutes_mod_commutative, match_family, necessary_conditions, Family,
    FamilyParams, LinearForm,
};
use optcalc::commrule::CommRule;
use optcalc::freealg::{NCPoly, Word};
use optcalc::optimal::{commutator, is_regular};
use proptest::collection::vec;
use proptest::prelude::*;

fn small() -> impl Strategy<Value = i64> {
    -2i64..=2
}

fn form() -> impl Strategy<Value = LinearForm> {
    (small(), small()).prop_map(|(a, b)| [q().from_i64(a), q().from_i64(b)])
}

fn params(family: Family) -> BoxedStrategy<FamilyParams> {
    let scalar = || small().prop_map(|c| q().from_i64(c));
    let base = match family {
        Family::I => (form(), form(), form(), scalar()).prop_map(|(u, v, w, l)| FamilyParams::i(u, v, w, l)).boxed(),
        Family::II => (form(), form(), scalar(), scalar())
            .prop_map(|(v, v1, l, m)| FamilyParams::ii(v, v1, l, m))
            .boxed(),
        Family::III => (form(), form()).prop_map(|(u, v)| FamilyParams::iii(u, v)).boxed(),
        Family::IV => (form(), form(), form()).prop_map(|(u, v, w)| FamilyParams::iv(u, v, w)).boxed(),
    };
    (base, any::<bool>()).prop_map(|(p, s)| p.with_swap(s)).boxed()
}

fn any_family() -> impl Strategy<Value = FamilyParams> {
    prop_oneof![params(Family::I), params(Family::II), params(Family::III), params(Family::IV)]
}

/// A family member with a few linear-form coefficients nudged.
fn perturbed_member() -> impl Strategy<Value = CommRule> {
    let nudges = vec((0..2usize, 0..2usize, 0..2usize, 0..2usize, small()), 0..=2);
    (any_family(), nudges).prop_map(|(p, nudges)| {
        let rule = build_family(&p).unwrap();
        let mut images = rule.images().to_vec();
        for (j, k, i, l, c) in nudges {
            let x = NCPoly::monomial(2, q().from_i64(c), Word::letter(l));
            let entry = images[j].get(k, i) + &x;
            images[j].set(k, i, entry);
        }
        CommRule::from_matrices(q(), images).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn families_round_trip(p in any_family()) {
        let rule = build_family(&p).unwrap();
        let matches = match_family(&rule).unwrap();
        prop_assert!(
            matches.iter().any(|m| build_family(m).unwrap() == rule),
            "no match rebuilds the rule for {:?}", p
        );
        for m in &matches {
            prop_assert_eq!(&build_family(m).unwrap(), &rule);
        }
    }

    #[test]
    fn families_satisfy_the_forward_checks(p in any_family()) {
        let rule = build_family(&p).unwrap();
        let c = commutator(q());
        for k in 0..2 {
            prop_assert!(partial(&rule, k, &c).unwrap().is_zero());
        }
        prop_assert!(necessary_conditions(&rule).is_empty());
        prop_assert!(commutes_mod_commutative(&rule).unwrap());
        prop_assert!(commutator_in_i2(&rule).unwrap());
    }

    /// A regular rule with commuting generators in the optimal algebra that
    /// matches no family would be a counterexample to the classification.
    #[test]
    fn regular_commutative_rules_belong_to_a_family(
        rule in prop_oneof![perturbed_member(), homogeneous_rule(2)]
    ) {
        if is_regular(&rule).unwrap() && commutator_in_i2(&rule).unwrap() {
            let matches = match_family(&rule).unwrap();
            if matches.is_empty() {
                eprintln!("COUNTEREXAMPLE: regular rule with commutative optimal algebra outside families I-IV: {:?}", rule);
            }
            prop_assert!(!matches.is_empty());
        }
    }

    /// The necessary conditions say the partials of the commutator vanish,
    /// and every element of `I_2` has vanishing partials.
    #[test]
    fn violated_conditions_exclude_commutativity(rule in prop_oneof![perturbed_member(), homogeneous_rule(2)]) {
        if !necessary_conditions(&rule).is_empty() {
            prop_assert!(!commutator_in_i2(&rule).unwrap());
        }
    }
}
