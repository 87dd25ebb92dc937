//! The operational layer of the single-qubit stabilizer subtheory.
//!
//! Preparations are rational Bloch vectors inside the stabilizer
//! octahedron, transformations are convex mixtures of Clifford elements,
//! and measurement outcomes are affine functionals on states. Outcome
//! probabilities come from the Born rule, here the evaluation of an
//! effect on the channel image of a state.
//!
//! Operational equivalence is decided by canonical-form equality: Bloch
//! vectors for preparations, averaged 3×3 Bloch matrices for channels,
//! and `(constant, gradient)` pairs for effects. Extremal preparations
//! span the Bloch space and Pauli effects separate points, so these
//! decisions coincide with equality of statistics over all settings;
//! the test suite re-derives that from the extremal grid.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{clifford_group, Axis, CliffordElement, Rational, SignedPauli};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperationalError {
    #[error("Bloch vector {0} lies outside the stabilizer octahedron")]
    OutsideOctahedron(String),
    #[error("mixture weight {0} is negative")]
    NegativeWeight(Rational),
    #[error("mixture weights sum to {0}, expected exactly 1")]
    UnnormalizedWeights(Rational),
    #[error("a channel mixture must contain at least one element")]
    EmptyMixture,
    #[error("effect value reaches {value} on the octahedron; effects must stay within [0, 1]")]
    EffectOutOfRange { value: Rational },
    #[error("effects sum to {0}, expected the unit effect")]
    IncompleteMeasurement(String),
}

/// A preparation: a rational Bloch vector in the stabilizer octahedron
/// `|rx| + |ry| + |rz| <= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BlochStateRepr", into = "BlochStateRepr")]
pub struct BlochState {
    r: [Rational; 3],
}

#[derive(Serialize, Deserialize)]
struct BlochStateRepr {
    bloch: [Rational; 3],
}

impl TryFrom<BlochStateRepr> for BlochState {
    type Error = OperationalError;
    fn try_from(repr: BlochStateRepr) -> Result<Self, Self::Error> {
        BlochState::new(repr.bloch[0], repr.bloch[1], repr.bloch[2])
    }
}

impl From<BlochState> for BlochStateRepr {
    fn from(s: BlochState) -> Self {
        BlochStateRepr { bloch: s.r }
    }
}

impl BlochState {
    pub fn new(rx: Rational, ry: Rational, rz: Rational) -> Result<Self, OperationalError> {
        let norm = rx.abs() + ry.abs() + rz.abs();
        if norm > Rational::one() {
            return Err(OperationalError::OutsideOctahedron(format!(
                "({rx}, {ry}, {rz})"
            )));
        }
        Ok(Self { r: [rx, ry, rz] })
    }

    /// The maximally mixed state, Bloch vector `(0, 0, 0)`.
    pub fn origin() -> Self {
        Self {
            r: [Rational::zero(); 3],
        }
    }

    /// The eigenstate of a signed Pauli: the unit Bloch vector `sign · e_axis`.
    pub fn extremal(p: SignedPauli) -> Self {
        let mut r = [Rational::zero(); 3];
        r[p.axis.index()] = p.sign.as_rational();
        Self { r }
    }

    pub fn component(&self, axis: Axis) -> Rational {
        self.r[axis.index()]
    }

    pub fn coords(&self) -> [Rational; 3] {
        self.r
    }

    pub(crate) fn from_coords_unchecked(r: [Rational; 3]) -> Self {
        debug_assert!(r[0].abs() + r[1].abs() + r[2].abs() <= Rational::one());
        Self { r }
    }
}

impl fmt::Display for BlochState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r[0], self.r[1], self.r[2])
    }
}

impl fmt::Debug for BlochState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The six extremal preparations `±e_X, ±e_Y, ±e_Z`, in `(axis, sign)` order.
pub fn extremal_states() -> [BlochState; 6] {
    SignedPauli::all().map(BlochState::extremal)
}

/// A transformation: a convex mixture of Clifford conjugation actions.
/// Its Bloch action is the weight-averaged signed permutation matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ChannelRepr", into = "ChannelRepr")]
pub struct Channel {
    mixture: Vec<(Rational, CliffordElement)>,
}

#[derive(Serialize, Deserialize)]
struct ChannelRepr {
    mixture: Vec<MixtureTerm>,
}

#[derive(Serialize, Deserialize)]
struct MixtureTerm {
    weight: Rational,
    clifford: CliffordElement,
}

impl TryFrom<ChannelRepr> for Channel {
    type Error = OperationalError;
    fn try_from(repr: ChannelRepr) -> Result<Self, Self::Error> {
        Channel::new(
            repr.mixture
                .into_iter()
                .map(|term| (term.weight, term.clifford))
                .collect(),
        )
    }
}

impl From<Channel> for ChannelRepr {
    fn from(t: Channel) -> Self {
        ChannelRepr {
            mixture: t
                .mixture
                .into_iter()
                .map(|(weight, clifford)| MixtureTerm { weight, clifford })
                .collect(),
        }
    }
}

impl Channel {
    pub fn new(mixture: Vec<(Rational, CliffordElement)>) -> Result<Self, OperationalError> {
        if mixture.is_empty() {
            return Err(OperationalError::EmptyMixture);
        }
        let mut total = Rational::zero();
        for (weight, _) in &mixture {
            if weight.is_negative() {
                return Err(OperationalError::NegativeWeight(*weight));
            }
            total += *weight;
        }
        if !total.is_one() {
            return Err(OperationalError::UnnormalizedWeights(total));
        }
        Ok(Self { mixture })
    }

    /// A deterministic channel applying a single Clifford element.
    pub fn pure(element: CliffordElement) -> Self {
        Self {
            mixture: vec![(Rational::one(), element)],
        }
    }

    pub fn identity() -> Self {
        Self::pure(CliffordElement::identity())
    }

    pub fn mixture(&self) -> &[(Rational, CliffordElement)] {
        &self.mixture
    }

    /// The weight-averaged Bloch matrix, `matrix[row][col]`.
    pub fn bloch_matrix(&self) -> [[Rational; 3]; 3] {
        let mut m = [[Rational::zero(); 3]; 3];
        for (weight, element) in &self.mixture {
            let em = element.bloch_matrix();
            for (m_row, em_row) in m.iter_mut().zip(em) {
                for (entry, value) in m_row.iter_mut().zip(em_row) {
                    *entry += *weight * Rational::from_integer(value);
                }
            }
        }
        m
    }

    pub fn apply(&self, state: &BlochState) -> BlochState {
        apply_channel(self, state)
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [(w, element)] = self.mixture.as_slice() {
            if w.is_one() {
                return write!(f, "{element}");
            }
        }
        let terms: Vec<String> = self
            .mixture
            .iter()
            .map(|(w, element)| format!("{w}*{element}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A measurement outcome: the affine functional
/// `probability(r) = constant + gradient · r`, valued in `[0, 1]` on the
/// whole octahedron.
#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EffectRepr", into = "EffectRepr")]
pub struct Effect {
    constant: Rational,
    gradient: [Rational; 3],
}

#[derive(Serialize, Deserialize)]
struct EffectRepr {
    constant: Rational,
    gradient: [Rational; 3],
}

impl TryFrom<EffectRepr> for Effect {
    type Error = OperationalError;
    fn try_from(repr: EffectRepr) -> Result<Self, Self::Error> {
        Effect::new(repr.constant, repr.gradient)
    }
}

impl From<Effect> for EffectRepr {
    fn from(e: Effect) -> Self {
        EffectRepr {
            constant: e.constant,
            gradient: e.gradient,
        }
    }
}

impl Effect {
    pub fn new(constant: Rational, gradient: [Rational; 3]) -> Result<Self, OperationalError> {
        // An affine functional attains its extremes over the octahedron at
        // the vertices ±e_q, where it takes constant ± gradient[q].
        let reach = gradient
            .iter()
            .map(|g| g.abs())
            .max()
            .expect("gradient has three components");
        if constant + reach > Rational::one() {
            return Err(OperationalError::EffectOutOfRange {
                value: constant + reach,
            });
        }
        if (constant - reach).is_negative() {
            return Err(OperationalError::EffectOutOfRange {
                value: constant - reach,
            });
        }
        Ok(Self { constant, gradient })
    }

    /// The extremal Pauli effect for outcome `sign` of measuring `axis`:
    /// constant `1/2`, gradient `(sign/2) e_axis`.
    pub fn pauli(p: SignedPauli) -> Self {
        let mut gradient = [Rational::zero(); 3];
        gradient[p.axis.index()] = p.sign.as_rational() * Rational::half();
        Self {
            constant: Rational::half(),
            gradient,
        }
    }

    /// The unit effect: occurs with probability 1 for every state.
    pub fn unit() -> Self {
        Self {
            constant: Rational::one(),
            gradient: [Rational::zero(); 3],
        }
    }

    /// The zero effect: never occurs.
    pub fn zero() -> Self {
        Self {
            constant: Rational::zero(),
            gradient: [Rational::zero(); 3],
        }
    }

    pub fn constant(&self) -> Rational {
        self.constant
    }

    pub fn gradient(&self) -> [Rational; 3] {
        self.gradient
    }

    pub fn evaluate(&self, state: &BlochState) -> Rational {
        let mut value = self.constant;
        for axis in Axis::ALL {
            value += self.gradient[axis.index()] * state.component(axis);
        }
        value
    }

    /// Convex mixture of effects: measuring one of several POVMs at random
    /// and reporting a fixed outcome slot.
    pub fn mix(terms: &[(Rational, Effect)]) -> Result<Self, OperationalError> {
        let mut total = Rational::zero();
        let mut constant = Rational::zero();
        let mut gradient = [Rational::zero(); 3];
        for (weight, effect) in terms {
            if weight.is_negative() {
                return Err(OperationalError::NegativeWeight(*weight));
            }
            total += *weight;
            constant += *weight * effect.constant;
            for (acc, g) in gradient.iter_mut().zip(effect.gradient) {
                *acc += *weight * g;
            }
        }
        if !total.is_one() {
            return Err(OperationalError::UnnormalizedWeights(total));
        }
        Effect::new(constant, gradient)
    }

    /// Coarse-graining: merges two outcomes of one measurement into one.
    pub fn coarse_grain(&self, other: &Effect) -> Result<Self, OperationalError> {
        let mut gradient = [Rational::zero(); 3];
        for i in 0..3 {
            gradient[i] = self.gradient[i] + other.gradient[i];
        }
        Effect::new(self.constant + other.constant, gradient)
    }
}

impl fmt::Display for Effect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + ({}, {}, {})·r",
            self.constant, self.gradient[0], self.gradient[1], self.gradient[2]
        )
    }
}

impl fmt::Debug for Effect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The six extremal Pauli effects, in the same `(axis, sign)` order as
/// [`extremal_states`].
pub fn pauli_effects() -> [Effect; 6] {
    SignedPauli::all().map(Effect::pauli)
}

/// A complete measurement: effects summing to the unit effect.
#[derive(Clone, PartialEq, Eq)]
pub struct Measurement {
    effects: Vec<Effect>,
}

impl Measurement {
    pub fn new(effects: Vec<Effect>) -> Result<Self, OperationalError> {
        let mut constant = Rational::zero();
        let mut gradient = [Rational::zero(); 3];
        for e in &effects {
            constant += e.constant();
            for i in 0..3 {
                gradient[i] += e.gradient()[i];
            }
        }
        let complete = constant.is_one() && gradient.iter().all(|g| g.is_zero());
        if !complete {
            return Err(OperationalError::IncompleteMeasurement(format!(
                "{constant} + ({}, {}, {})·r",
                gradient[0], gradient[1], gradient[2]
            )));
        }
        Ok(Self { effects })
    }

    /// The two-outcome measurement of a Pauli axis.
    pub fn pauli(axis: Axis) -> Self {
        Self {
            effects: vec![
                Effect::pauli(SignedPauli::plus(axis)),
                Effect::pauli(SignedPauli::minus(axis)),
            ],
        }
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }
}

/// Image of a state under a channel: the mixture-averaged Bloch action.
/// Rotations preserve the octahedron, so the image is again a valid state.
pub fn apply_channel(t: &Channel, s: &BlochState) -> BlochState {
    let m = t.bloch_matrix();
    let r = s.coords();
    let mut image = [Rational::zero(); 3];
    for (row, image_row) in image.iter_mut().enumerate() {
        for (col, r_col) in r.iter().enumerate() {
            *image_row += m[row][col] * *r_col;
        }
    }
    BlochState::from_coords_unchecked(image)
}

/// Born-rule probability of the effect after preparing `p` and applying `t`.
pub fn born_probability(p: &BlochState, t: &Channel, e: &Effect) -> Rational {
    e.evaluate(&apply_channel(t, p))
}

/// Two preparations are operationally equivalent iff they produce the same
/// statistics in every setting; effects are affine and separate points, so
/// this is exact equality of Bloch vectors.
pub fn prep_equivalent(p1: &BlochState, p2: &BlochState) -> bool {
    p1 == p2
}

/// Two channels are operationally equivalent iff their statistics agree for
/// every preparation and measurement; extremal preparations span the Bloch
/// space, so this is equality of the averaged Bloch matrices.
pub fn channel_equivalent(t1: &Channel, t2: &Channel) -> bool {
    t1.bloch_matrix() == t2.bloch_matrix()
}

/// Two effects are operationally equivalent iff they assign the same
/// probability to every transformed preparation; this is equality of the
/// canonical `(constant, gradient)` form.
pub fn effect_equivalent(e1: &Effect, e2: &Effect) -> bool {
    e1.constant() == e2.constant() && e1.gradient() == e2.gradient()
}

/// The uniform Pauli mixture `ρ ↦ [ρ + XρX + YρY + ZρZ]/4`. It sends every
/// state to the maximally mixed state.
pub fn make_t1() -> Channel {
    let quarter = Rational::new(1, 4).expect("4 != 0");
    Channel::new(vec![
        (quarter, CliffordElement::identity()),
        (quarter, CliffordElement::pauli_x()),
        (quarter, CliffordElement::pauli_y()),
        (quarter, CliffordElement::pauli_z()),
    ])
    .expect("uniform weights sum to 1")
}

/// The Hadamard-conjugated Pauli mixture `ρ ↦ H T1(ρ) H`: every mixture
/// element of T1 left-composed with H. Operationally equivalent to T1.
pub fn make_t2() -> Channel {
    let h = CliffordElement::hadamard();
    let mixture = make_t1()
        .mixture()
        .iter()
        .map(|(w, element)| (*w, h.compose(element)))
        .collect();
    Channel::new(mixture).expect("weights unchanged")
}

/// The uniform mixture over all 24 Clifford elements. Its averaged Bloch
/// matrix is zero, so it is operationally equivalent to T1.
pub fn uniform_clifford_mixture() -> Channel {
    let weight = Rational::new(1, 24).expect("24 != 0");
    Channel::new(clifford_group().iter().map(|c| (weight, *c)).collect())
        .expect("24 equal weights sum to 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn plus(axis: Axis) -> BlochState {
        BlochState::extremal(SignedPauli::plus(axis))
    }

    fn minus(axis: Axis) -> BlochState {
        BlochState::extremal(SignedPauli::minus(axis))
    }

    /// The statistics-equality oracle for channels: exhaustive comparison
    /// over the extremal (preparation, effect) grid. Kept independent of
    /// the matrix-equality decision procedure it validates.
    fn statistics_agree_on_extremal_grid(t1: &Channel, t2: &Channel) -> bool {
        extremal_states().iter().all(|p| {
            pauli_effects()
                .iter()
                .all(|e| born_probability(p, t1, e) == born_probability(p, t2, e))
        })
    }

    #[test]
    fn octahedron_membership_is_enforced() {
        assert!(BlochState::new(rat(1, 2), rat(1, 4), rat(1, 4)).is_ok());
        assert!(BlochState::new(rat(1, 2), rat(1, 2), rat(1, 2)).is_err());
        assert!(BlochState::new(Rational::one(), Rational::zero(), rat(1, 100)).is_err());
    }

    #[test]
    fn depolarizing_mixture_sends_states_to_the_origin() {
        let t1 = make_t1();
        assert_eq!(apply_channel(&t1, &plus(Axis::Z)), BlochState::origin());
        for p in extremal_states() {
            assert_eq!(apply_channel(&t1, &p), BlochState::origin());
            assert_eq!(apply_channel(&make_t2(), &p), BlochState::origin());
        }
    }

    #[test]
    fn hadamard_channel_moves_x_to_z() {
        let h = Channel::pure(CliffordElement::hadamard());
        assert_eq!(apply_channel(&h, &plus(Axis::X)), plus(Axis::Z));
    }

    #[test]
    fn identity_channel_fixes_states() {
        let id = Channel::identity();
        let s = BlochState::new(rat(1, 3), Rational::zero(), rat(-1, 2)).unwrap();
        assert_eq!(apply_channel(&id, &s), s);
    }

    #[test]
    fn born_probability_examples() {
        let id = Channel::identity();
        let x_plus = Effect::pauli(SignedPauli::plus(Axis::X));
        let z_plus = Effect::pauli(SignedPauli::plus(Axis::Z));
        // Measuring the prepared axis is deterministic.
        assert_eq!(
            born_probability(&plus(Axis::X), &id, &x_plus),
            Rational::one()
        );
        // Measuring an orthogonal axis is unbiased.
        assert_eq!(
            born_probability(&plus(Axis::X), &id, &z_plus),
            Rational::half()
        );
        // H carries the X eigenstate onto the Z eigenstate.
        let h = Channel::pure(CliffordElement::hadamard());
        assert_eq!(
            born_probability(&plus(Axis::X), &h, &z_plus),
            Rational::one()
        );
    }

    #[test]
    fn prep_equivalence_of_balanced_mixtures() {
        // (1/2)(+e_Z) + (1/2)(-e_Z) and (1/2)(+e_X) + (1/2)(-e_X) are both
        // the origin.
        let origin = BlochState::origin();
        let mix = |a: BlochState, b: BlochState| {
            let c = a.coords();
            let d = b.coords();
            BlochState::new(
                Rational::half() * (c[0] + d[0]),
                Rational::half() * (c[1] + d[1]),
                Rational::half() * (c[2] + d[2]),
            )
            .unwrap()
        };
        assert!(prep_equivalent(&mix(plus(Axis::Z), minus(Axis::Z)), &origin));
        assert!(prep_equivalent(&mix(plus(Axis::X), minus(Axis::X)), &origin));
        assert!(!prep_equivalent(&plus(Axis::Z), &minus(Axis::Z)));
    }

    #[test]
    fn prep_equivalence_matches_statistics_for_a_skewed_mixture() {
        // (1/3)(+e_X) + (2/3)(-e_X) has Bloch vector (-1/3, 0, 0). The
        // oracle evaluates all six extremal effects on both procedures.
        let w_plus = rat(1, 3);
        let w_minus = rat(2, 3);
        let direct = BlochState::new(rat(-1, 3), Rational::zero(), Rational::zero()).unwrap();
        for e in pauli_effects() {
            let mixed =
                w_plus * e.evaluate(&plus(Axis::X)) + w_minus * e.evaluate(&minus(Axis::X));
            assert_eq!(mixed, e.evaluate(&direct));
        }
        let mixture_state =
            BlochState::new(w_plus - w_minus, Rational::zero(), Rational::zero()).unwrap();
        assert!(prep_equivalent(&mixture_state, &direct));
    }

    #[test]
    fn t1_and_t2_are_operationally_equivalent() {
        assert!(channel_equivalent(&make_t1(), &make_t2()));
        assert!(statistics_agree_on_extremal_grid(&make_t1(), &make_t2()));
    }

    #[test]
    fn hadamard_differs_from_identity() {
        let h = Channel::pure(CliffordElement::hadamard());
        assert!(!channel_equivalent(&h, &Channel::identity()));
        assert!(!statistics_agree_on_extremal_grid(&h, &Channel::identity()));
    }

    #[test]
    fn uniform_clifford_mixture_is_equivalent_to_t1() {
        // The 24 signed permutation matrices average to zero.
        let uniform = uniform_clifford_mixture();
        assert!(channel_equivalent(&make_t1(), &uniform));
        let zero = [[Rational::zero(); 3]; 3];
        assert_eq!(uniform.bloch_matrix(), zero);
    }

    #[test]
    fn channel_equivalence_decision_agrees_with_statistics_oracle() {
        let h = Channel::pure(CliffordElement::hadamard());
        let s = Channel::pure(CliffordElement::phase());
        let pairs = [
            (make_t1(), make_t2()),
            (make_t1(), uniform_clifford_mixture()),
            (h.clone(), Channel::identity()),
            (h.clone(), s),
            (h.clone(), h.clone()),
        ];
        for (a, b) in &pairs {
            assert_eq!(
                channel_equivalent(a, b),
                statistics_agree_on_extremal_grid(a, b)
            );
        }
    }

    #[test]
    fn effect_equivalence_examples() {
        let x = Measurement::pauli(Axis::X);
        let z = Measurement::pauli(Axis::Z);
        let unit_from_x = x.effects()[0].coarse_grain(&x.effects()[1]).unwrap();
        let unit_from_z = z.effects()[0].coarse_grain(&z.effects()[1]).unwrap();
        assert!(effect_equivalent(&unit_from_x, &unit_from_z));
        assert!(effect_equivalent(&unit_from_x, &Effect::unit()));
        assert!(!effect_equivalent(
            &Effect::pauli(SignedPauli::plus(Axis::X)),
            &Effect::pauli(SignedPauli::minus(Axis::X)),
        ));
    }

    #[test]
    fn mixed_effect_matches_averaged_functional() {
        // Measuring X or Y with probability 1/2 each and reporting the +1
        // outcome gives constant 1/2 and gradient (1/4, 1/4, 0).
        let mixed = Effect::mix(&[
            (Rational::half(), Effect::pauli(SignedPauli::plus(Axis::X))),
            (Rational::half(), Effect::pauli(SignedPauli::plus(Axis::Y))),
        ])
        .unwrap();
        let expected =
            Effect::new(Rational::half(), [rat(1, 4), rat(1, 4), Rational::zero()]).unwrap();
        assert!(effect_equivalent(&mixed, &expected));
    }

    #[test]
    fn effect_range_is_enforced() {
        assert!(
            Effect::new(Rational::half(), [rat(3, 4), Rational::zero(), Rational::zero()])
                .is_err()
        );
        assert!(
            Effect::new(rat(1, 4), [Rational::half(), Rational::zero(), Rational::zero()])
                .is_err()
        );
        assert!(Effect::new(
            Rational::half(),
            [Rational::half(), Rational::zero(), Rational::zero()]
        )
        .is_ok());
    }

    #[test]
    fn channel_weights_are_validated() {
        let h = CliffordElement::hadamard();
        assert!(matches!(
            Channel::new(vec![]),
            Err(OperationalError::EmptyMixture)
        ));
        assert!(matches!(
            Channel::new(vec![(Rational::half(), h)]),
            Err(OperationalError::UnnormalizedWeights(_))
        ));
        assert!(matches!(
            Channel::new(vec![
                (rat(3, 2), h),
                (rat(-1, 2), CliffordElement::identity())
            ]),
            Err(OperationalError::NegativeWeight(_))
        ));
    }

    #[test]
    fn measurement_must_be_complete() {
        assert!(Measurement::new(vec![Effect::pauli(SignedPauli::plus(Axis::X))]).is_err());
        assert!(Measurement::pauli(Axis::Y).effects().len() == 2);
        assert!(Measurement::new(vec![Effect::unit()]).is_ok());
        assert!(Measurement::new(vec![Effect::unit(), Effect::zero()]).is_ok());
    }

    #[test]
    fn extremal_statistics_take_only_three_values() {
        let allowed = [Rational::zero(), Rational::half(), Rational::one()];
        for p in extremal_states() {
            for c in clifford_group() {
                let t = Channel::pure(*c);
                for e in pauli_effects() {
                    let prob = born_probability(&p, &t, &e);
                    assert!(allowed.contains(&prob), "unexpected probability {prob}");
                }
            }
        }
    }

    #[test]
    fn measurement_statistics_sum_to_one_on_the_extremal_grid() {
        for p in extremal_states() {
            for c in clifford_group() {
                let t = Channel::pure(*c);
                for axis in Axis::ALL {
                    let total: Rational = Measurement::pauli(axis)
                        .effects()
                        .iter()
                        .map(|e| born_probability(&p, &t, e))
                        .sum();
                    assert!(total.is_one());
                }
            }
        }
    }

    #[test]
    fn effects_stay_within_bounds_on_octahedron_vertices() {
        for e in pauli_effects() {
            for v in extremal_states() {
                let value = e.evaluate(&v);
                assert!(!value.is_negative() && value <= Rational::one());
            }
        }
    }

    #[test]
    fn state_json_shape() {
        let s = BlochState::new(rat(1, 3), Rational::zero(), rat(-1, 2)).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"bloch":["1/3","0","-1/2"]}"#);
        let back: BlochState = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        // Deserialization re-validates the octahedron invariant.
        assert!(serde_json::from_str::<BlochState>(r#"{"bloch":["1","1","1"]}"#).is_err());
    }

    #[test]
    fn channel_json_shape() {
        let json = serde_json::to_string(&make_t1()).unwrap();
        assert_eq!(
            json,
            r#"{"mixture":[{"weight":"1/4","clifford":"I"},{"weight":"1/4","clifford":"X"},{"weight":"1/4","clifford":"Y"},{"weight":"1/4","clifford":"Z"}]}"#
        );
        let back: Channel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, make_t1());
        assert!(serde_json::from_str::<Channel>(
            r#"{"mixture":[{"weight":"1/2","clifford":"I"}]}"#
        )
        .is_err());
    }

    #[test]
    fn effect_json_shape() {
        let e = Effect::pauli(SignedPauli::plus(Axis::X));
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"constant":"1/2","gradient":["1/2","0","0"]}"#);
        let back: Effect = serde_json::from_str(&json).unwrap();
        assert!(effect_equivalent(&back, &e));
    }

    prop_compose! {
        /// Random octahedron states via random convex weights over the six
        /// vertices and the origin.
        fn arb_state()(raw in proptest::collection::vec(0u32..20, 7)) -> BlochState {
            let total: u32 = raw.iter().sum();
            if total == 0 {
                return BlochState::origin();
            }
            let total = i64::from(total);
            let mut coords = [Rational::zero(); 3];
            for (i, p) in SignedPauli::all().into_iter().enumerate() {
                let w = Rational::new(i64::from(raw[i]), total).unwrap();
                let v = BlochState::extremal(p).coords();
                for (c, vc) in coords.iter_mut().zip(v) {
                    *c += w * vc;
                }
            }
            BlochState::new(coords[0], coords[1], coords[2]).unwrap()
        }
    }

    prop_compose! {
        fn arb_channel()(raw in proptest::collection::vec((0u32..20, 0usize..24), 1..5)) -> Channel {
            let total: u32 = raw.iter().map(|(w, _)| *w).sum();
            let group = clifford_group();
            if total == 0 {
                return Channel::identity();
            }
            let mixture = raw
                .iter()
                .map(|(w, i)| (Rational::new(i64::from(*w), i64::from(total)).unwrap(), group[*i]))
                .collect();
            Channel::new(mixture).unwrap()
        }
    }

    proptest! {
        #[test]
        fn channel_images_remain_in_the_octahedron(s in arb_state(), t in arb_channel()) {
            let image = apply_channel(&t, &s).coords();
            let norm = image[0].abs() + image[1].abs() + image[2].abs();
            prop_assert!(norm <= Rational::one());
        }

        #[test]
        fn born_probabilities_are_probabilities(s in arb_state(), t in arb_channel()) {
            for e in pauli_effects() {
                let prob = born_probability(&s, &t, &e);
                prop_assert!(!prob.is_negative() && prob <= Rational::one());
            }
        }

        #[test]
        fn channel_equivalence_decision_matches_oracle(a in arb_channel(), b in arb_channel()) {
            prop_assert_eq!(
                channel_equivalent(&a, &b),
                statistics_agree_on_extremal_grid(&a, &b)
            );
        }

        #[test]
        fn state_serialization_round_trips(s in arb_state()) {
            let json = serde_json::to_string(&s).unwrap();
            let back: BlochState = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
