//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Every check is exact rational equality; there are no tolerances.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use stabctx_core::algebra::{
    clifford_group, enumerate_group, Axis, CliffordElement, Rational, Sign, SignedPauli,
};
use stabctx_core::nogo::{
    build_ks_partition, build_pnc_partition, canonical_responses, coarse_map,
    exhaustive_relabel_search, theorem1_certificate, theorem1_certificate_on,
    theorem2_certificate, SupportSpec, TheoremKind,
};
use stabctx_core::ontology::{
    channel_map, clifford_map, extremal_triples, preparation_density, response_vector,
    twirl_triples, verify_against_born, OnticDistribution, OnticState, ResponseVector,
};
use stabctx_core::operational::{
    apply_channel, born_probability, channel_equivalent, extremal_states, make_t1, make_t2,
    BlochState, Channel, Effect, pauli_effects,
};

fn report(number: u32, description: &str, pass: bool) {
    println!(
        "acceptance criterion {number} ({description}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "acceptance criterion {number} failed: {description}");
}

#[test]
fn criterion_1_born_rule_reproduction() {
    let extremal = verify_against_born(&extremal_triples());
    let twirl = verify_against_born(&twirl_triples());
    let pass = extremal.checked == 864
        && extremal.mismatches.is_empty()
        && twirl.checked == 72
        && twirl.mismatches.is_empty();
    report(
        1,
        "model prediction equals Born probability on all 864 + 72 triples",
        pass,
    );
}

#[test]
fn criterion_2_operational_equivalence_of_t1_and_t2() {
    let t1 = make_t1();
    let t2 = make_t2();
    let origin = BlochState::origin();
    let all_to_origin = extremal_states().iter().all(|s| {
        apply_channel(&t1, s) == origin && apply_channel(&t2, s) == origin
    });
    let pass = channel_equivalent(&t1, &t2) && all_to_origin;
    report(
        2,
        "T1 and T2 are operationally equivalent and send every extremal state to the origin",
        pass,
    );
}

#[test]
fn criterion_3_transformation_contextuality_witness() {
    let quarter = Rational::new(1, 4).unwrap();
    let m1 = channel_map(&make_t1());
    let m2 = channel_map(&make_t2());
    let mut pass = true;
    let mut nonzero_1 = 0usize;
    let mut nonzero_2 = 0usize;
    for from in OnticState::all() {
        for to in OnticState::all() {
            let same_parity = from.parity() == to.parity();
            let expected_1 = if same_parity { quarter } else { Rational::zero() };
            let expected_2 = if same_parity { Rational::zero() } else { quarter };
            pass &= m1.entry(to, from) == expected_1;
            pass &= m2.entry(to, from) == expected_2;
            if !m1.entry(to, from).is_zero() {
                nonzero_1 += 1;
                pass &= m2.entry(to, from).is_zero();
            }
            if !m2.entry(to, from).is_zero() {
                nonzero_2 += 1;
            }
        }
    }
    pass &= nonzero_1 == 32 && nonzero_2 == 32;
    report(
        3,
        "the T1 and T2 stochastic maps match the parity-block pattern with disjoint supports",
        pass,
    );
}

#[test]
fn criterion_4_theorem_1_replay() {
    let expected_t1 = channel_map(&make_t1()).entries();
    let expected_t2 = channel_map(&make_t2()).entries();
    let canonical = theorem1_certificate().expect("canonical replay succeeds");
    let doubled =
        theorem1_certificate_on(&SupportSpec::doubled()).expect("doubled replay succeeds");
    let pass = canonical.disjoint_support
        && matches!(canonical.kind, TheoremKind::Theorem1)
        && canonical.coarse_map_t1.entries() == expected_t1
        && canonical.coarse_map_t2.entries() == expected_t2
        && doubled.disjoint_support
        && doubled.coarse_map_t1.entries() == expected_t1
        && doubled.coarse_map_t2.entries() == expected_t2
        && build_pnc_partition(&SupportSpec::doubled())
            .map(|part| part.cells().values().all(|labels| labels.len() == 2))
            .unwrap_or(false);
    report(
        4,
        "theorem 1 certificate has disjoint coarse maps on the canonical and doubled supports",
        pass,
    );
}

#[test]
fn criterion_5_theorem_2_replay() {
    let first = theorem1_certificate().expect("theorem 1 replay succeeds");
    let second = theorem2_certificate().expect("theorem 2 replay succeeds");
    let singleton_cells = build_ks_partition(&canonical_responses())
        .map(|part| part.cells().values().all(|labels| labels.len() == 1))
        .unwrap_or(false);
    let pass = matches!(second.kind, TheoremKind::Theorem2)
        && second.disjoint_support
        && second.coarse_map_t1 == first.coarse_map_t1
        && second.coarse_map_t2 == first.coarse_map_t2
        && singleton_cells;
    report(
        5,
        "theorem 2 forces the identical coarse-map pair via the outcome-determinism partition",
        pass,
    );
}

#[test]
fn criterion_6_relabeling_completeness() {
    let search = exhaustive_relabel_search();
    let pass = search.candidates == 40320 && search.escapes == 0;
    report(6, "all 40320 cell relabelings, zero escapes", pass);
}

#[test]
fn criterion_7_group_structure() {
    let generated = enumerate_group(&[CliffordElement::hadamard(), CliffordElement::phase()]);
    let mut pass = generated.len() == 24;

    let group = clifford_group();
    for a in group {
        for b in group {
            let ab = a.compose(b);
            pass &= ab.parity_character() == a.parity_character() * b.parity_character();
            pass &= clifford_map(&ab) == clifford_map(a).compose(&clifford_map(b));
        }
    }
    pass &= CliffordElement::hadamard().parity_character() == Sign::Minus;
    pass &= CliffordElement::phase().parity_character() == Sign::Minus;
    for pauli in [
        CliffordElement::identity(),
        CliffordElement::pauli_x(),
        CliffordElement::pauli_y(),
        CliffordElement::pauli_z(),
    ] {
        pass &= pauli.parity_character() == Sign::Plus;
    }
    report(
        7,
        "H and S generate 24 elements, parity is multiplicative, the ontic maps are a \
         permutation representation",
        pass,
    );
}

#[test]
fn criterion_8_preparation_and_measurement_noncontextuality() {
    let mut pass = true;
    for axis in Axis::ALL {
        let balanced = OnticDistribution::convex_mix(&[
            (
                Rational::half(),
                preparation_density(&BlochState::extremal(SignedPauli::plus(axis))),
            ),
            (
                Rational::half(),
                preparation_density(&BlochState::extremal(SignedPauli::minus(axis))),
            ),
        ])
        .expect("balanced mixtures are convex");
        pass &= balanced == OnticDistribution::uniform();

        let unit = Effect::pauli(SignedPauli::plus(axis))
            .coarse_grain(&Effect::pauli(SignedPauli::minus(axis)))
            .expect("coarse-graining a complete measurement yields the unit effect");
        pass &= response_vector(&unit).expect("unit effect is in the generated set")
            == ResponseVector::ones();
    }
    report(
        8,
        "balanced decompositions of I/2 share one density and coarse-grained unit effects \
         share one response",
        pass,
    );
}

#[test]
fn criterion_9_subtheory_statistics() {
    let mut pass = true;
    for p in SignedPauli::all() {
        let prep = BlochState::extremal(p);
        for c in clifford_group() {
            let transported = c.act(p);
            let channel = Channel::pure(*c);
            for (e, outcome) in pauli_effects().iter().zip(SignedPauli::all()) {
                let prob = born_probability(&prep, &channel, e);
                let expected = if outcome == transported {
                    Rational::one()
                } else if outcome == -transported {
                    Rational::zero()
                } else {
                    Rational::half()
                };
                pass &= prob == expected;
            }
        }
    }
    report(
        9,
        "extremal statistics are {0, 1/2, 1}, deterministic exactly on the transported axis",
        pass,
    );
}
