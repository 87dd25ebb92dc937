//! Mechanized replays of the two no-go arguments.
//!
//! Both arguments run the same pipeline over an arbitrary finite set of
//! abstract ontic labels:
//!
//! 1. Partition the labels into 8 disjoint spanning cells indexed by
//!    `(x, y, z)` sign tuples — from eigenstate supports under preparation
//!    noncontextuality ([`build_pnc_partition`]), or from deterministic
//!    response functions under measurement noncontextuality and outcome
//!    determinism ([`build_ks_partition`]).
//! 2. Derive the cell permutation each Clifford is forced onto by the
//!    requirement that transformations carry supports onto image supports
//!    ([`forced_cell_permutation`]).
//! 3. Average the forced permutations over the two operationally
//!    equivalent mixtures T1 and T2 ([`coarse_map`]) and observe that the
//!    resulting coarse-grained stochastic maps have disjoint supports.
//!
//! The outcome is a self-contained [`Certificate`]; an exhaustive search
//! over all `8!` relabelings of the cells confirms that no relabeling
//! lets the two channels share a stochastic map.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{clifford_group, Axis, CliffordElement, Rational, Sign, SignedPauli};
use crate::ontology::OnticState;
use crate::operational::{
    apply_channel, channel_equivalent, extremal_states, make_t1, make_t2, BlochState, Channel,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NogoError {
    #[error("no support given for the {0} eigenstate")]
    MissingSupport(SignedPauli),
    #[error("the {0} eigenstate has an empty support; every eigenstate is preparable")]
    EmptySupport(SignedPauli),
    #[error("label {label} appears in the {eigenstate} support but not in the declared universe")]
    UniverseMissingLabel { label: Label, eigenstate: SignedPauli },
    #[error(
        "PNC violation: label {label} lies in both supports of the {axis} axis; orthogonal \
         eigenstates must be perfectly distinguishable"
    )]
    OverlappingOppositeSupports { axis: Axis, label: Label },
    #[error(
        "PNC violation: label {label} is covered by the {covered} axis pair but not by the \
         {uncovered} axis pair, so the mixed-state support is axis-dependent"
    )]
    InconsistentMixedStateSupport {
        label: Label,
        covered: Axis,
        uncovered: Axis,
    },
    #[error("cell {0} is empty; the partition cells must span")]
    EmptyCell(OnticState),
    #[error("the triple intersections do not partition the retained labels: {0}")]
    NotAPartition(String),
    #[error("no response given for the {0} outcome")]
    MissingResponse(SignedPauli),
    #[error(
        "response for {effect} at label {label} is {value}; outcome determinism requires 0 or 1"
    )]
    NonDeterministicResponse {
        effect: SignedPauli,
        label: Label,
        value: Rational,
    },
    #[error(
        "label {label} answers the {axis} measurement with total probability {total}; exactly \
         one outcome must fire"
    )]
    InconsistentOutcomeAssignment {
        label: Label,
        axis: Axis,
        total: Rational,
    },
    #[error("cell images do not form a bijection")]
    InvalidCellPermutation,
    #[error("coarse map is invalid: {0}")]
    InvalidCoarseMap(String),
}

/// Why a certificate could not be produced. Any of these would indicate a
/// defect in the implementation, not a physical possibility.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Falsification {
    #[error("T1 and T2 failed the operational-equivalence check")]
    ChannelsNotEquivalent,
    #[error("equivalence evidence incomplete: T1 and T2 disagree on state {0}")]
    EvidenceMismatch(String),
    #[error("partition construction failed: {0}")]
    Partition(#[from] NogoError),
    #[error("the two coarse-grained maps share support")]
    SupportsNotDisjoint,
}

/// An abstract ontic label. The no-go pipeline never assumes the label set
/// is `{±1}³`; the canonical 8-state model and its doubled variant are just
/// particular label sets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(name: impl Into<String>) -> Self {
        Self(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Eigenstate supports over an abstract label set: for each of the six
/// extremal preparations, the labels it has some possibility of producing.
#[derive(Clone, PartialEq, Eq)]
pub struct SupportSpec {
    supports: BTreeMap<SignedPauli, BTreeSet<Label>>,
    universe: BTreeSet<Label>,
}

impl SupportSpec {
    /// Builds a spec whose universe is exactly the union of the supports.
    pub fn new(supports: BTreeMap<SignedPauli, BTreeSet<Label>>) -> Result<Self, NogoError> {
        let universe = supports.values().flatten().cloned().collect();
        Self::with_universe(supports, universe)
    }

    /// Builds a spec over an explicitly declared universe, which may
    /// contain labels outside every support; those are the labels the
    /// maximally mixed state never produces, and the partition step
    /// deletes them.
    pub fn with_universe(
        supports: BTreeMap<SignedPauli, BTreeSet<Label>>,
        universe: BTreeSet<Label>,
    ) -> Result<Self, NogoError> {
        for p in SignedPauli::all() {
            let support = supports.get(&p).ok_or(NogoError::MissingSupport(p))?;
            if support.is_empty() {
                return Err(NogoError::EmptySupport(p));
            }
            for label in support {
                if !universe.contains(label) {
                    return Err(NogoError::UniverseMissingLabel {
                        label: label.clone(),
                        eigenstate: p,
                    });
                }
            }
        }
        Ok(Self { supports, universe })
    }

    /// The canonical 8-state supports: one label per ontic state, with each
    /// eigenstate supported on the four states carrying its coordinate.
    pub fn canonical() -> Self {
        Self::from_copies(1)
    }

    /// The doubled model: two interchangeable copies of every ontic state,
    /// 16 labels in total.
    pub fn doubled() -> Self {
        Self::from_copies(2)
    }

    fn from_copies(copies: usize) -> Self {
        let label = |state: OnticState, copy: usize| {
            if copies == 1 {
                Label::new(state.to_string())
            } else {
                Label::new(format!("{state}#{copy}"))
            }
        };
        let mut supports = BTreeMap::new();
        for p in SignedPauli::all() {
            let mut support = BTreeSet::new();
            for state in OnticState::all() {
                if state.coordinate(p.axis) == p.sign {
                    for copy in 0..copies {
                        support.insert(label(state, copy));
                    }
                }
            }
            supports.insert(p, support);
        }
        Self::new(supports).expect("canonical supports are well-formed")
    }

    pub fn support(&self, p: SignedPauli) -> &BTreeSet<Label> {
        &self.supports[&p]
    }

    pub fn universe(&self) -> &BTreeSet<Label> {
        &self.universe
    }
}

/// The 8 disjoint spanning cells of retained labels, indexed by `(x, y, z)`
/// sign tuples. Cell `(x, y, z)` lies inside the supports of the `x`
/// eigenstate of X, the `y` eigenstate of Y, and the `z` eigenstate of Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellPartition {
    cells: BTreeMap<OnticState, BTreeSet<Label>>,
}

impl CellPartition {
    pub fn cell(&self, tag: OnticState) -> &BTreeSet<Label> {
        &self.cells[&tag]
    }

    pub fn cells(&self) -> &BTreeMap<OnticState, BTreeSet<Label>> {
        &self.cells
    }

    pub fn retained_labels(&self) -> BTreeSet<Label> {
        self.cells.values().flatten().cloned().collect()
    }

    /// Labels of the support of an eigenstate, reconstructed as the union
    /// of the four compatible cells.
    pub fn support_labels(&self, p: SignedPauli) -> BTreeSet<Label> {
        self.cells
            .iter()
            .filter(|(tag, _)| tag.coordinate(p.axis) == p.sign)
            .flat_map(|(_, labels)| labels.iter().cloned())
            .collect()
    }
}

/// Partitions the retained labels into the triple-intersection cells
/// `Δ(x eigenstate of X) ∩ Δ(y eigenstate of Y) ∩ Δ(z eigenstate of Z)`.
///
/// The deletion step comes first: only labels inside the support of the
/// maximally mixed state (the union of any axis's pair of supports) are
/// retained. Preparation noncontextuality makes that union the same for
/// all three axes and the opposite supports disjoint; violations are
/// reported as diagnoses.
pub fn build_pnc_partition(spec: &SupportSpec) -> Result<CellPartition, NogoError> {
    let axis_union = |axis: Axis| -> BTreeSet<Label> {
        spec.support(SignedPauli::plus(axis))
            .union(spec.support(SignedPauli::minus(axis)))
            .cloned()
            .collect()
    };
    let retained = axis_union(Axis::X);
    for axis in [Axis::Y, Axis::Z] {
        let union = axis_union(axis);
        if let Some(label) = retained.difference(&union).next() {
            return Err(NogoError::InconsistentMixedStateSupport {
                label: label.clone(),
                covered: Axis::X,
                uncovered: axis,
            });
        }
        if let Some(label) = union.difference(&retained).next() {
            return Err(NogoError::InconsistentMixedStateSupport {
                label: label.clone(),
                covered: axis,
                uncovered: Axis::X,
            });
        }
    }
    for axis in Axis::ALL {
        let plus = spec.support(SignedPauli::plus(axis));
        let minus = spec.support(SignedPauli::minus(axis));
        if let Some(label) = plus.intersection(minus).next() {
            return Err(NogoError::OverlappingOppositeSupports {
                axis,
                label: label.clone(),
            });
        }
    }

    let mut cells = BTreeMap::new();
    for tag in OnticState::all() {
        let mut members: BTreeSet<Label> = retained.clone();
        for axis in Axis::ALL {
            let support = spec.support(SignedPauli::new(axis, tag.coordinate(axis)));
            members.retain(|label| support.contains(label));
        }
        if members.is_empty() {
            return Err(NogoError::EmptyCell(tag));
        }
        cells.insert(tag, members);
    }

    let mut seen: BTreeMap<&Label, usize> = BTreeMap::new();
    for labels in cells.values() {
        for label in labels {
            *seen.entry(label).or_insert(0) += 1;
        }
    }
    for label in &retained {
        match seen.get(label) {
            Some(1) => {}
            Some(n) => {
                return Err(NogoError::NotAPartition(format!(
                    "label {label} lies in {n} cells"
                )))
            }
            None => {
                return Err(NogoError::NotAPartition(format!(
                    "label {label} lies in no cell"
                )))
            }
        }
    }
    Ok(CellPartition { cells })
}

/// Deterministic response functions over abstract labels, one per Pauli
/// effect. Labels absent from a map respond 0.
pub type DeterministicResponses = BTreeMap<SignedPauli, BTreeMap<Label, Rational>>;

/// The canonical 8-state responses: measuring an axis reads the matching
/// coordinate of the label's ontic state.
pub fn canonical_responses() -> DeterministicResponses {
    let mut responses = BTreeMap::new();
    for p in SignedPauli::all() {
        let mut values = BTreeMap::new();
        for state in OnticState::all() {
            let hit = state.coordinate(p.axis) == p.sign;
            values.insert(
                Label::new(state.to_string()),
                if hit { Rational::one() } else { Rational::zero() },
            );
        }
        responses.insert(p, values);
    }
    responses
}

/// Partitions labels by their deterministic measurement outcomes: cell
/// `(x, y, z)` holds the labels answering `x` to X, `y` to Y, and `z` to Z.
pub fn build_ks_partition(responses: &DeterministicResponses) -> Result<CellPartition, NogoError> {
    for p in SignedPauli::all() {
        if !responses.contains_key(&p) {
            return Err(NogoError::MissingResponse(p));
        }
    }
    for (p, values) in responses {
        for (label, value) in values {
            if !value.is_zero() && !value.is_one() {
                return Err(NogoError::NonDeterministicResponse {
                    effect: *p,
                    label: label.clone(),
                    value: *value,
                });
            }
        }
    }

    let universe: BTreeSet<Label> = responses
        .values()
        .flat_map(|values| values.keys().cloned())
        .collect();
    let response_at = |p: SignedPauli, label: &Label| -> Rational {
        responses[&p]
            .get(label)
            .copied()
            .unwrap_or_else(Rational::zero)
    };

    let mut cells: BTreeMap<OnticState, BTreeSet<Label>> = OnticState::all()
        .into_iter()
        .map(|tag| (tag, BTreeSet::new()))
        .collect();
    for label in &universe {
        let mut signs = [Sign::Plus; 3];
        for axis in Axis::ALL {
            let plus = response_at(SignedPauli::plus(axis), label);
            let minus = response_at(SignedPauli::minus(axis), label);
            let total = plus + minus;
            if !total.is_one() {
                return Err(NogoError::InconsistentOutcomeAssignment {
                    label: label.clone(),
                    axis,
                    total,
                });
            }
            signs[axis.index()] = if plus.is_one() {
                Sign::Plus
            } else {
                Sign::Minus
            };
        }
        let tag = OnticState::new(signs[0], signs[1], signs[2]);
        cells
            .get_mut(&tag)
            .expect("all 8 tags present")
            .insert(label.clone());
    }
    for (tag, labels) in &cells {
        if labels.is_empty() {
            return Err(NogoError::EmptyCell(*tag));
        }
    }
    Ok(CellPartition { cells })
}

/// A bijection on the 8 cell tags.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellPermutation {
    image: [OnticState; 8],
}

impl CellPermutation {
    /// `image[i]` is the image of the cell tagged `OnticState::from_index(i)`.
    pub fn new(image: [OnticState; 8]) -> Result<Self, NogoError> {
        let mut hit = [false; 8];
        for tag in image {
            if hit[tag.index()] {
                return Err(NogoError::InvalidCellPermutation);
            }
            hit[tag.index()] = true;
        }
        Ok(Self { image })
    }

    pub fn identity() -> Self {
        Self {
            image: OnticState::all(),
        }
    }

    pub fn apply(&self, tag: OnticState) -> OnticState {
        self.image[tag.index()]
    }

    /// `self.compose(other)` applies `other` first.
    pub fn compose(&self, other: &CellPermutation) -> CellPermutation {
        CellPermutation {
            image: other.image.map(|tag| self.apply(tag)),
        }
    }
}

impl fmt::Debug for CellPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = OnticState::all()
            .iter()
            .map(|tag| format!("{tag}→{}", self.apply(*tag)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Support structure expressed over cell tags: for each eigenstate, the
/// bitmask (by cell index) of cells inside its support.
#[derive(Clone, Copy)]
struct CellSupports {
    masks: [u8; 6],
}

fn eigenstate_slot(p: SignedPauli) -> usize {
    p.axis.index() * 2 + usize::from(p.sign == Sign::Minus)
}

impl CellSupports {
    /// The structure of any partition built here: cell `(x, y, z)` lies in
    /// the supports picked out by its own coordinates.
    fn canonical() -> Self {
        Self::relabeled(&CellPermutation::identity())
    }

    /// The structure after renaming cell `v` to `σ(v)`: the support of an
    /// eigenstate becomes the image of its four compatible cells.
    fn relabeled(sigma: &CellPermutation) -> Self {
        let mut masks = [0u8; 6];
        for state in OnticState::all() {
            let renamed = sigma.apply(state);
            for axis in Axis::ALL {
                let p = SignedPauli::new(axis, state.coordinate(axis));
                masks[eigenstate_slot(p)] |= 1 << renamed.index();
            }
        }
        Self { masks }
    }

    fn mask(&self, p: SignedPauli) -> u8 {
        self.masks[eigenstate_slot(p)]
    }
}

/// Derives the unique cell permutation consistent with the requirement
/// that a transformation carries every eigenstate support onto the support
/// of the image eigenstate. Returns `None` when no consistent bijection
/// exists under the given support structure.
fn derive_forced_permutation(
    c: &CliffordElement,
    supports: &CellSupports,
) -> Option<CellPermutation> {
    let mut image = [OnticState::from_index(0); 8];
    for (cell_index, image_slot) in image.iter_mut().enumerate() {
        let bit = 1u8 << cell_index;
        let mut target = 0xFFu8;
        for axis in Axis::ALL {
            let in_plus = supports.mask(SignedPauli::plus(axis)) & bit != 0;
            let in_minus = supports.mask(SignedPauli::minus(axis)) & bit != 0;
            let sign = match (in_plus, in_minus) {
                (true, false) => Sign::Plus,
                (false, true) => Sign::Minus,
                _ => return None,
            };
            target &= supports.mask(c.act(SignedPauli::new(axis, sign)));
        }
        if target.count_ones() != 1 {
            return None;
        }
        *image_slot = OnticState::from_index(target.trailing_zeros() as usize);
    }
    CellPermutation::new(image).ok()
}

/// The cell permutation a Clifford element is forced onto over a PNC or
/// outcome-determinism partition.
///
/// Cell `(x, y, z)` is the intersection of three eigenstate supports, and
/// supports must transport onto image supports, so the image cell is the
/// intersection of the three image supports: existence and uniqueness
/// follow from the partition structure, whatever the cells contain.
pub fn forced_cell_permutation(c: &CliffordElement, part: &CellPartition) -> CellPermutation {
    debug_assert_eq!(part.cells().len(), 8);
    derive_forced_permutation(c, &CellSupports::canonical())
        .expect("a spanning disjoint partition forces a unique cell permutation")
}

/// A column-stochastic 8×8 matrix over the partition cells.
#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[[Rational; 8]; 8]", into = "[[Rational; 8]; 8]")]
pub struct CoarseMap {
    entries: [[Rational; 8]; 8],
}

impl TryFrom<[[Rational; 8]; 8]> for CoarseMap {
    type Error = NogoError;
    fn try_from(entries: [[Rational; 8]; 8]) -> Result<Self, Self::Error> {
        CoarseMap::new(entries)
    }
}

impl From<CoarseMap> for [[Rational; 8]; 8] {
    fn from(m: CoarseMap) -> Self {
        m.entries
    }
}

impl CoarseMap {
    pub fn new(entries: [[Rational; 8]; 8]) -> Result<Self, NogoError> {
        let mut totals = [Rational::zero(); 8];
        for (row_index, row) in entries.iter().enumerate() {
            for (col, entry) in row.iter().enumerate() {
                if entry.is_negative() {
                    return Err(NogoError::InvalidCoarseMap(format!(
                        "entry ({row_index}, {col}) is negative"
                    )));
                }
                totals[col] += *entry;
            }
        }
        for (col, total) in totals.iter().enumerate() {
            if !total.is_one() {
                return Err(NogoError::InvalidCoarseMap(format!(
                    "column {col} sums to {total}, expected 1"
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn entry(&self, to: OnticState, from: OnticState) -> Rational {
        self.entries[to.index()][from.index()]
    }

    pub fn entries(&self) -> [[Rational; 8]; 8] {
        self.entries
    }

    pub fn nonzero_entries(&self) -> usize {
        self.entries
            .iter()
            .flatten()
            .filter(|e| !e.is_zero())
            .count()
    }

    /// True iff no position is nonzero in both maps.
    pub fn support_disjoint_from(&self, other: &CoarseMap) -> bool {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .all(|(a, b)| a.is_zero() || b.is_zero())
    }
}

impl fmt::Debug for CoarseMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let parts: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

/// The coarse-grained stochastic map of a channel over the partition
/// cells: the weight-averaged forced cell permutations of its mixture.
pub fn coarse_map(t: &Channel, part: &CellPartition) -> CoarseMap {
    let mut entries = [[Rational::zero(); 8]; 8];
    for (weight, element) in t.mixture() {
        let perm = forced_cell_permutation(element, part);
        for from in OnticState::all() {
            entries[perm.apply(from).index()][from.index()] += *weight;
        }
    }
    CoarseMap::new(entries).expect("averaged permutations are column-stochastic")
}

#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremKind {
    Theorem1,
    Theorem2,
}

impl fmt::Debug for TheoremKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremKind::Theorem1 => f.write_str("theorem1"),
            TheoremKind::Theorem2 => f.write_str("theorem2"),
        }
    }
}

/// One row of operational-equivalence evidence: an extremal state and its
/// images under the two channels.
#[derive(Clone, Serialize, Deserialize)]
pub struct EquivalenceEvidence {
    pub state: BlochState,
    #[serde(rename = "image_under_T1")]
    pub image_under_t1: BlochState,
    #[serde(rename = "image_under_T2")]
    pub image_under_t2: BlochState,
}

/// A self-contained record of the contradiction: operational equivalence
/// evidence for T1 and T2, the two coarse-grained maps every conforming
/// model forces, and the disjointness verdict. Everything needed to
/// re-verify the arithmetic is in the record.
#[derive(Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: TheoremKind,
    pub equivalence_evidence: Vec<EquivalenceEvidence>,
    #[serde(rename = "coarse_map_T1")]
    pub coarse_map_t1: CoarseMap,
    #[serde(rename = "coarse_map_T2")]
    pub coarse_map_t2: CoarseMap,
    pub disjoint_support: bool,
    pub conclusion: String,
    #[serde(rename = "toolVersion")]
    pub tool_version: String,
}

impl Certificate {
    /// Re-checks the record's internal claims: the evidence covers all six
    /// extremal states with matching images, and the disjointness flag
    /// matches the matrices.
    pub fn recheck(&self) -> Result<(), Falsification> {
        let mut covered: BTreeSet<String> = BTreeSet::new();
        for row in &self.equivalence_evidence {
            if row.image_under_t1 != row.image_under_t2 {
                return Err(Falsification::EvidenceMismatch(row.state.to_string()));
            }
            covered.insert(row.state.to_string());
        }
        for state in extremal_states() {
            if !covered.contains(&state.to_string()) {
                return Err(Falsification::EvidenceMismatch(state.to_string()));
            }
        }
        let disjoint = self
            .coarse_map_t1
            .support_disjoint_from(&self.coarse_map_t2);
        if !disjoint || !self.disjoint_support {
            return Err(Falsification::SupportsNotDisjoint);
        }
        Ok(())
    }
}

fn certificate_on_partition(
    kind: TheoremKind,
    part: &CellPartition,
) -> Result<Certificate, Falsification> {
    let t1 = make_t1();
    let t2 = make_t2();
    if !channel_equivalent(&t1, &t2) {
        return Err(Falsification::ChannelsNotEquivalent);
    }
    let mut evidence = Vec::new();
    for state in extremal_states() {
        let image_under_t1 = apply_channel(&t1, &state);
        let image_under_t2 = apply_channel(&t2, &state);
        if image_under_t1 != image_under_t2 {
            return Err(Falsification::EvidenceMismatch(state.to_string()));
        }
        evidence.push(EquivalenceEvidence {
            state,
            image_under_t1,
            image_under_t2,
        });
    }
    let coarse_map_t1 = coarse_map(&t1, part);
    let coarse_map_t2 = coarse_map(&t2, part);
    if !coarse_map_t1.support_disjoint_from(&coarse_map_t2) {
        return Err(Falsification::SupportsNotDisjoint);
    }
    let conclusion = match kind {
        TheoremKind::Theorem1 => {
            "TNC fails under PNC: T1 and T2 are operationally equivalent, yet every \
             preparation-noncontextual model forces Gamma_T1 != Gamma_T2, with disjoint \
             supports on the coarse-grained cells."
        }
        TheoremKind::Theorem2 => {
            "TNC fails under MNC + outcome determinism: T1 and T2 are operationally \
             equivalent, yet every outcome-deterministic measurement-noncontextual model \
             forces Gamma_T1 != Gamma_T2, with disjoint supports on the coarse-grained cells."
        }
    };
    Ok(Certificate {
        kind,
        equivalence_evidence: evidence,
        coarse_map_t1,
        coarse_map_t2,
        disjoint_support: true,
        conclusion: conclusion.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Replays the first no-go argument over a preparation-noncontextuality
/// partition of the given supports.
pub fn theorem1_certificate_on(spec: &SupportSpec) -> Result<Certificate, Falsification> {
    let part = build_pnc_partition(spec)?;
    certificate_on_partition(TheoremKind::Theorem1, &part)
}

/// Replays the first no-go argument on the canonical 8-state supports.
pub fn theorem1_certificate() -> Result<Certificate, Falsification> {
    theorem1_certificate_on(&SupportSpec::canonical())
}

/// Replays the second no-go argument over an outcome-determinism partition
/// of the given responses.
pub fn theorem2_certificate_on(
    responses: &DeterministicResponses,
) -> Result<Certificate, Falsification> {
    let part = build_ks_partition(responses)?;
    certificate_on_partition(TheoremKind::Theorem2, &part)
}

/// Replays the second no-go argument on the canonical 8-state responses.
pub fn theorem2_certificate() -> Result<Certificate, Falsification> {
    theorem2_certificate_on(&canonical_responses())
}

/// A relabeling search outcome: how many cell relabelings were tried and
/// how many let the two channels share a coarse-grained map.
#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelabelSearchReport {
    pub candidates: usize,
    pub escapes: usize,
}

impl fmt::Debug for RelabelSearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{candidates: {}, escapes: {}}}",
            self.candidates, self.escapes
        )
    }
}

/// All `8! = 40320` bijective relabelings of the cell tags, in
/// lexicographic order.
pub fn all_cell_relabelings() -> Vec<CellPermutation> {
    let tags = OnticState::all();
    (0..8usize)
        .permutations(8)
        .map(|perm| {
            let mut image = [tags[0]; 8];
            for (i, &target) in perm.iter().enumerate() {
                image[i] = tags[target];
            }
            CellPermutation::new(image).expect("permutations of 0..8 are bijections")
        })
        .collect()
}

/// The 24 relabelings induced by the Clifford group's own cell transport.
pub fn clifford_cell_relabelings() -> Vec<CellPermutation> {
    clifford_group()
        .iter()
        .map(|c| {
            let mut image = [OnticState::from_index(0); 8];
            for state in OnticState::all() {
                image[state.index()] = state.transported(c);
            }
            CellPermutation::new(image).expect("transport is a bijection")
        })
        .collect()
}

/// For each relabeling, re-derives the forced permutations of both
/// channels' mixture elements under the relabeled support structure and
/// counts the relabelings for which the two averaged coarse maps coincide.
pub fn relabel_search_with(
    channel_a: &Channel,
    channel_b: &Channel,
    relabelings: &[CellPermutation],
) -> RelabelSearchReport {
    let mut escapes = 0;
    for sigma in relabelings {
        let supports = CellSupports::relabeled(sigma);
        let map_a = derived_coarse_map(channel_a, &supports);
        let map_b = derived_coarse_map(channel_b, &supports);
        if let (Some(a), Some(b)) = (map_a, map_b) {
            if a == b {
                escapes += 1;
            }
        }
    }
    RelabelSearchReport {
        candidates: relabelings.len(),
        escapes,
    }
}

fn derived_coarse_map(t: &Channel, supports: &CellSupports) -> Option<[[Rational; 8]; 8]> {
    let mut entries = [[Rational::zero(); 8]; 8];
    for (weight, element) in t.mixture() {
        let perm = derive_forced_permutation(element, supports)?;
        for from in OnticState::all() {
            entries[perm.apply(from).index()][from.index()] += *weight;
        }
    }
    Some(entries)
}

/// The full brute-force confirmation: no relabeling of the 8 cells lets T1
/// and T2 share a coarse-grained stochastic map.
pub fn exhaustive_relabel_search() -> RelabelSearchReport {
    relabel_search_with(&make_t1(), &make_t2(), &all_cell_relabelings())
}
