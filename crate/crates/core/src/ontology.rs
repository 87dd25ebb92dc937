//! The 8-state ontological model of the single-qubit stabilizer subtheory.
//!
//! The ontic space is `{±1}³`: a physical state assigns a definite value
//! to each Pauli axis. Eigenstate preparations fix their own coordinate
//! and randomize the other two, Clifford transformations permute the
//! ontic states exactly as they permute the signed Pauli axes, and
//! measuring an axis reads out its coordinate. The prediction rule is the
//! usual total-probability contraction of response vector, stochastic
//! map, and preparation density, and [`verify_against_born`] checks it
//! against the Born rule triple by triple.
//!
//! Distributions, stochastic maps, and response vectors are stored over
//! the fixed lexicographic order of `(x, y, z)` with `+1` before `-1`,
//! which pins down all serialized row/column indices.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Axis, CliffordElement, Rational, Sign};
use crate::operational::{
    born_probability, extremal_states, make_t1, make_t2, pauli_effects, BlochState, Channel,
    Effect,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OntologyError {
    #[error("distribution is invalid: {0}")]
    InvalidDistribution(String),
    #[error("stochastic map is invalid: {0}")]
    InvalidStochasticMap(String),
    #[error("response value {value} at ontic state {state} lies outside [0, 1]")]
    InvalidResponse { state: OnticState, value: Rational },
    #[error(
        "effect {effect} takes value {value} at ontic state {state}; it is not generated from \
         Pauli effects by mixing and coarse-graining"
    )]
    EffectOutsideStabilizerSet {
        effect: String,
        state: OnticState,
        value: Rational,
    },
}

/// An ontic state: simultaneous `±1` values for the three Pauli axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OnticState {
    pub x: Sign,
    pub y: Sign,
    pub z: Sign,
}

impl OnticState {
    pub const fn new(x: Sign, y: Sign, z: Sign) -> Self {
        Self { x, y, z }
    }

    /// All 8 ontic states in lexicographic order, `+1` before `-1`.
    pub fn all() -> [OnticState; 8] {
        let mut out = [OnticState::new(Sign::Plus, Sign::Plus, Sign::Plus); 8];
        let mut i = 0;
        for x in Sign::BOTH {
            for y in Sign::BOTH {
                for z in Sign::BOTH {
                    out[i] = OnticState::new(x, y, z);
                    i += 1;
                }
            }
        }
        out
    }

    /// Position in the fixed lexicographic order.
    pub fn index(&self) -> usize {
        let bit = |s: Sign| usize::from(s == Sign::Minus);
        4 * bit(self.x) + 2 * bit(self.y) + bit(self.z)
    }

    pub fn from_index(index: usize) -> Self {
        Self::all()[index]
    }

    pub fn coordinate(&self, axis: Axis) -> Sign {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    /// The product `x·y·z`.
    pub fn parity(&self) -> Sign {
        self.x * self.y * self.z
    }

    /// Image under a Clifford element: the coordinates move exactly like
    /// the Pauli axes, so axis `q` deposits `sign(q)·value(q)` at the image
    /// axis of `q`.
    pub fn transported(&self, c: &CliffordElement) -> OnticState {
        let mut coords = [Sign::Plus; 3];
        for axis in Axis::ALL {
            let image = c.image_of_axis(axis);
            coords[image.axis.index()] = image.sign * self.coordinate(axis);
        }
        OnticState::new(coords[0], coords[1], coords[2])
    }
}

impl fmt::Display for OnticState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// A probability distribution over the 8 ontic states.
#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[Rational; 8]", into = "[Rational; 8]")]
pub struct OnticDistribution {
    weights: [Rational; 8],
}

impl TryFrom<[Rational; 8]> for OnticDistribution {
    type Error = OntologyError;
    fn try_from(weights: [Rational; 8]) -> Result<Self, Self::Error> {
        OnticDistribution::new(weights)
    }
}

impl From<OnticDistribution> for [Rational; 8] {
    fn from(d: OnticDistribution) -> Self {
        d.weights
    }
}

impl OnticDistribution {
    /// Weights indexed in the fixed lexicographic order.
    pub fn new(weights: [Rational; 8]) -> Result<Self, OntologyError> {
        for (i, w) in weights.iter().enumerate() {
            if w.is_negative() {
                return Err(OntologyError::InvalidDistribution(format!(
                    "weight {w} at {} is negative",
                    OnticState::from_index(i)
                )));
            }
        }
        let total: Rational = weights.iter().copied().sum();
        if !total.is_one() {
            return Err(OntologyError::InvalidDistribution(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(Self { weights })
    }

    pub fn uniform() -> Self {
        let eighth = Rational::new(1, 8).expect("8 != 0");
        Self {
            weights: [eighth; 8],
        }
    }

    pub fn weight(&self, state: OnticState) -> Rational {
        self.weights[state.index()]
    }

    pub fn weights(&self) -> [Rational; 8] {
        self.weights
    }

    /// Convex mixture of distributions.
    pub fn convex_mix(terms: &[(Rational, OnticDistribution)]) -> Result<Self, OntologyError> {
        let mut weights = [Rational::zero(); 8];
        let mut total = Rational::zero();
        for (w, d) in terms {
            if w.is_negative() {
                return Err(OntologyError::InvalidDistribution(format!(
                    "mixture weight {w} is negative"
                )));
            }
            total += *w;
            for (acc, dw) in weights.iter_mut().zip(d.weights) {
                *acc += *w * dw;
            }
        }
        if !total.is_one() {
            return Err(OntologyError::InvalidDistribution(format!(
                "mixture weights sum to {total}, expected 1"
            )));
        }
        Self::new(weights)
    }
}

impl fmt::Debug for OnticDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A column-stochastic 8×8 matrix: `entry(to, from)` is the probability
/// that `from` is sent to `to`.
#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[[Rational; 8]; 8]", into = "[[Rational; 8]; 8]")]
pub struct StochasticMap {
    // entries[row][col] = Pr(row | col), rows and columns in the fixed
    // lexicographic order.
    entries: [[Rational; 8]; 8],
}

impl TryFrom<[[Rational; 8]; 8]> for StochasticMap {
    type Error = OntologyError;
    fn try_from(entries: [[Rational; 8]; 8]) -> Result<Self, Self::Error> {
        StochasticMap::new(entries)
    }
}

impl From<StochasticMap> for [[Rational; 8]; 8] {
    fn from(m: StochasticMap) -> Self {
        m.entries
    }
}

impl StochasticMap {
    pub fn new(entries: [[Rational; 8]; 8]) -> Result<Self, OntologyError> {
        let mut totals = [Rational::zero(); 8];
        for (row_index, row) in entries.iter().enumerate() {
            for (col, entry) in row.iter().enumerate() {
                if entry.is_negative() {
                    return Err(OntologyError::InvalidStochasticMap(format!(
                        "entry ({row_index}, {col}) is negative"
                    )));
                }
                totals[col] += *entry;
            }
        }
        for (col, total) in totals.iter().enumerate() {
            if !total.is_one() {
                return Err(OntologyError::InvalidStochasticMap(format!(
                    "column {col} sums to {total}, expected 1"
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn identity() -> Self {
        let mut entries = [[Rational::zero(); 8]; 8];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = Rational::one();
        }
        Self { entries }
    }

    pub fn entry(&self, to: OnticState, from: OnticState) -> Rational {
        self.entries[to.index()][from.index()]
    }

    pub fn entries(&self) -> [[Rational; 8]; 8] {
        self.entries
    }

    /// Pushes a distribution forward through the map.
    pub fn apply(&self, d: &OnticDistribution) -> OnticDistribution {
        let weights = d.weights();
        let mut out = [Rational::zero(); 8];
        for (row, out_row) in out.iter_mut().enumerate() {
            for (col, w) in weights.iter().enumerate() {
                *out_row += self.entries[row][col] * *w;
            }
        }
        OnticDistribution::new(out).expect("stochastic maps preserve distributions")
    }

    /// Matrix product: `self.compose(other)` applies `other` first.
    pub fn compose(&self, other: &StochasticMap) -> StochasticMap {
        let mut entries = [[Rational::zero(); 8]; 8];
        for (row, entries_row) in entries.iter_mut().enumerate() {
            for (col, out_entry) in entries_row.iter_mut().enumerate() {
                for mid in 0..8 {
                    *out_entry += self.entries[row][mid] * other.entries[mid][col];
                }
            }
        }
        StochasticMap { entries }
    }

    /// True iff every entry is 0 or 1 with a single 1 per column and row.
    pub fn is_permutation(&self) -> bool {
        let mut row_ones = [0usize; 8];
        for col in 0..8 {
            let mut col_ones = 0usize;
            for (row, ones) in row_ones.iter_mut().enumerate() {
                let e = self.entries[row][col];
                if e.is_one() {
                    col_ones += 1;
                    *ones += 1;
                } else if !e.is_zero() {
                    return false;
                }
            }
            if col_ones != 1 {
                return false;
            }
        }
        row_ones.iter().all(|&n| n == 1)
    }
}

impl fmt::Debug for StochasticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let parts: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome probabilities conditioned on the ontic state.
#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[Rational; 8]", into = "[Rational; 8]")]
pub struct ResponseVector {
    values: [Rational; 8],
}

impl TryFrom<[Rational; 8]> for ResponseVector {
    type Error = OntologyError;
    fn try_from(values: [Rational; 8]) -> Result<Self, Self::Error> {
        ResponseVector::new(values)
    }
}

impl From<ResponseVector> for [Rational; 8] {
    fn from(r: ResponseVector) -> Self {
        r.values
    }
}

impl ResponseVector {
    pub fn new(values: [Rational; 8]) -> Result<Self, OntologyError> {
        for (i, v) in values.iter().enumerate() {
            if v.is_negative() || *v > Rational::one() {
                return Err(OntologyError::InvalidResponse {
                    state: OnticState::from_index(i),
                    value: *v,
                });
            }
        }
        Ok(Self { values })
    }

    pub fn ones() -> Self {
        Self {
            values: [Rational::one(); 8],
        }
    }

    pub fn value(&self, state: OnticState) -> Rational {
        self.values[state.index()]
    }

    pub fn values(&self) -> [Rational; 8] {
        self.values
    }

    /// Expectation under a distribution.
    pub fn expectation(&self, d: &OnticDistribution) -> Rational {
        self.values
            .iter()
            .zip(d.weights())
            .map(|(v, w)| *v * w)
            .sum()
    }
}

impl fmt::Debug for ResponseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Preparation density of a state.
///
/// An eigenstate preparation fixes its own coordinate and leaves the other
/// two uniformly random (weight 1/4 on each compatible ontic state). A
/// general octahedron state is assigned the density of its canonical
/// convex decomposition: weight `|r_q|` on the `sign(r_q)` eigenstate of
/// each axis plus the residual `1 - Σ|r_q|` on the maximally mixed state
/// (uniform 1/8). The assignment is affine in the Bloch vector, so every
/// other convex decomposition of the same state yields the same density.
pub fn preparation_density(p: &BlochState) -> OnticDistribution {
    let quarter = Rational::new(1, 4).expect("4 != 0");
    let eighth = Rational::new(1, 8).expect("8 != 0");
    let mut weights = [Rational::zero(); 8];
    let mut residual = Rational::one();
    for axis in Axis::ALL {
        let component = p.component(axis);
        if component.is_zero() {
            continue;
        }
        let magnitude = component.abs();
        let sign = if component.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        residual -= magnitude;
        for state in OnticState::all() {
            if state.coordinate(axis) == sign {
                weights[state.index()] += magnitude * quarter;
            }
        }
    }
    if !residual.is_zero() {
        let share = residual * eighth;
        for w in weights.iter_mut() {
            *w += share;
        }
    }
    OnticDistribution::new(weights).expect("octahedron states yield valid densities")
}

/// Stochastic map of a Clifford element: the 0/1 permutation matrix of the
/// ontic transport.
pub fn clifford_map(c: &CliffordElement) -> StochasticMap {
    let mut entries = [[Rational::zero(); 8]; 8];
    for from in OnticState::all() {
        let to = from.transported(c);
        entries[to.index()][from.index()] = Rational::one();
    }
    StochasticMap::new(entries).expect("permutation matrices are column-stochastic")
}

/// Stochastic map of a channel: the weight-averaged permutation matrices
/// of its mixture elements.
pub fn channel_map(t: &Channel) -> StochasticMap {
    channel_map_with(t, clifford_map)
}

fn channel_map_with(
    t: &Channel,
    element_map: impl Fn(&CliffordElement) -> StochasticMap,
) -> StochasticMap {
    let mut entries = [[Rational::zero(); 8]; 8];
    for (weight, element) in t.mixture() {
        let m = element_map(element).entries();
        for (row, entries_row) in entries.iter_mut().enumerate() {
            for (col, entry) in entries_row.iter_mut().enumerate() {
                *entry += *weight * m[row][col];
            }
        }
    }
    StochasticMap::new(entries).expect("convex mixtures of stochastic maps are stochastic")
}

/// Response vector of an effect: the effect's affine form evaluated at the
/// cube vertex `(x, y, z)`.
///
/// A Pauli effect becomes the deterministic indicator of its own
/// coordinate, and mixing/coarse-graining extend affinely. Effects outside
/// the set generated from Pauli effects take values outside `[0, 1]` at
/// some cube vertex and are rejected.
pub fn response_vector(e: &Effect) -> Result<ResponseVector, OntologyError> {
    let mut values = [Rational::zero(); 8];
    for state in OnticState::all() {
        let mut value = e.constant();
        for axis in Axis::ALL {
            value += e.gradient()[axis.index()] * state.coordinate(axis).as_rational();
        }
        if value.is_negative() || value > Rational::one() {
            return Err(OntologyError::EffectOutsideStabilizerSet {
                effect: e.to_string(),
                state,
                value,
            });
        }
        values[state.index()] = value;
    }
    ResponseVector::new(values)
}

/// The model's prediction: the total-probability contraction of response
/// vector, channel map, and preparation density.
pub fn predict(p: &BlochState, t: &Channel, e: &Effect) -> Result<Rational, OntologyError> {
    let response = response_vector(e)?;
    let transported = channel_map(t).apply(&preparation_density(p));
    Ok(response.expectation(&transported))
}

/// One prepare–transform–measure setting.
#[derive(Clone, Serialize)]
pub struct Triple {
    pub prep: BlochState,
    pub channel: Channel,
    pub effect: Effect,
}

impl Triple {
    pub fn new(prep: BlochState, channel: Channel, effect: Effect) -> Self {
        Self {
            prep,
            channel,
            effect,
        }
    }
}

/// The 864 extremal settings: 6 eigenstate preparations × 24 pure Clifford
/// channels × 6 Pauli effects.
pub fn extremal_triples() -> Vec<Triple> {
    let mut triples = Vec::with_capacity(864);
    for p in extremal_states() {
        for c in crate::algebra::clifford_group() {
            for e in pauli_effects() {
                triples.push(Triple::new(p, Channel::pure(*c), e));
            }
        }
    }
    triples
}

/// The 72 settings with the two operationally equivalent mixtures:
/// 6 eigenstate preparations × {T1, T2} × 6 Pauli effects.
pub fn twirl_triples() -> Vec<Triple> {
    let mut triples = Vec::with_capacity(72);
    for p in extremal_states() {
        for t in [make_t1(), make_t2()] {
            for e in pauli_effects() {
                triples.push(Triple::new(p, t.clone(), e));
            }
        }
    }
    triples
}

/// A triple where the model and the Born rule disagree.
#[derive(Clone, Serialize)]
pub struct BornMismatch {
    pub prep: BlochState,
    pub channel: Channel,
    pub effect: Effect,
    pub model: Rational,
    pub quantum: Rational,
}

/// Outcome of checking the model against the Born rule on a set of triples.
#[derive(Clone, Serialize)]
pub struct BornVerificationReport {
    pub checked: usize,
    pub mismatches: Vec<BornMismatch>,
}

impl BornVerificationReport {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the model's prediction with the Born rule on every triple.
///
/// Panics if a triple's effect is not generated from Pauli effects; the
/// standard grids ([`extremal_triples`], [`twirl_triples`]) always are.
pub fn verify_against_born(triples: &[Triple]) -> BornVerificationReport {
    verify_with_model(triples, |p, t, e| {
        predict(p, t, e).expect("grid effects lie in the Pauli-generated set")
    })
}

/// Same comparison with a caller-supplied model, used to self-test the
/// checker against deliberately corrupted models.
pub fn verify_with_model(
    triples: &[Triple],
    model: impl Fn(&BlochState, &Channel, &Effect) -> Rational,
) -> BornVerificationReport {
    let mut mismatches = Vec::new();
    for triple in triples {
        let predicted = model(&triple.prep, &triple.channel, &triple.effect);
        let quantum = born_probability(&triple.prep, &triple.channel, &triple.effect);
        if predicted != quantum {
            mismatches.push(BornMismatch {
                prep: triple.prep,
                channel: triple.channel.clone(),
                effect: triple.effect,
                model: predicted,
                quantum,
            });
        }
    }
    BornVerificationReport {
        checked: triples.len(),
        mismatches,
    }
}

/// Checker self-test model: represents the Hadamard by the identity
/// permutation, leaving everything else intact. Visibly wrong on any grid
/// that exercises the Hadamard.
pub fn predict_with_faulty_hadamard(p: &BlochState, t: &Channel, e: &Effect) -> Rational {
    let response = response_vector(e).expect("grid effects lie in the Pauli-generated set");
    let hadamard = CliffordElement::hadamard();
    let map = channel_map_with(t, |element| {
        if *element == hadamard {
            StochasticMap::identity()
        } else {
            clifford_map(element)
        }
    });
    response.expectation(&map.apply(&preparation_density(p)))
}
