//! Exact rationals, signed Pauli operators, and the single-qubit Clifford
//! group represented as signed permutations of the Pauli axes.
//!
//! A Clifford unitary is identified with its conjugation action on the
//! Pauli axes (global phases carry no operational content in the
//! subtheory). That action is a signed permutation of `{X, Y, Z}` whose
//! 3×3 matrix has determinant +1, so the group here is exactly the
//! 24-element rotation group of the cube.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("cannot parse rational from `{0}`")]
    MalformedRational(String),
    #[error("image axes do not form a permutation of X, Y, Z")]
    RepeatedImageAxis,
    #[error("signed permutation has determinant -1 and is not a Clifford conjugation action")]
    OrientationReversing,
    #[error("cannot parse Clifford element from `{0}`")]
    MalformedClifford(String),
}

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Every probability and weight in this crate is a `Rational`;
/// arithmetic never rounds.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(Ratio<i64>);

impl Rational {
    /// Builds `numerator / denominator`, reduced to lowest terms.
    pub fn new(numerator: i64, denominator: i64) -> Result<Self, AlgebraError> {
        if denominator == 0 {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self(Ratio::new(numerator, denominator)))
    }

    pub const fn from_integer(n: i64) -> Self {
        Self(Ratio::new_raw(n, 1))
    }

    pub fn zero() -> Self {
        Self(Ratio::zero())
    }

    pub fn one() -> Self {
        Self(Ratio::one())
    }

    /// `1/2`, the ubiquitous unbiased-outcome probability.
    pub fn half() -> Self {
        Self(Ratio::new(1, 2))
    }

    pub fn numerator(self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(self) -> i64 {
        *self.0.denom()
    }

    pub fn abs(self) -> Self {
        Self(self.0.abs())
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(self) -> bool {
        self.0.is_negative()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

macro_rules! impl_rational_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $assign_trait for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                *self = self.$method(rhs);
            }
        }
    };
}

impl_rational_binop!(Add, add, AddAssign, add_assign);
impl_rational_binop!(Sub, sub, SubAssign, sub_assign);
impl_rational_binop!(Mul, mul, MulAssign, mul_assign);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        Rational(self.0.div(rhs.0))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), Add::add)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self.0.denom() == 1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = AlgebraError;

    /// Parses `"p"` or `"p/q"`; the sign is normalized onto the numerator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || AlgebraError::MalformedRational(s.to_string());
        match s.split_once('/') {
            None => s
                .trim()
                .parse::<i64>()
                .map(Rational::from_integer)
                .map_err(|_| malformed()),
            Some((num, den)) => {
                let numerator = num.trim().parse::<i64>().map_err(|_| malformed())?;
                let denominator = den.trim().parse::<i64>().map_err(|_| malformed())?;
                Rational::new(numerator, denominator).map_err(|_| malformed())
            }
        }
    }
}

// Rationals serialize as "p/q" strings (or "p" for integers), never as
// floats, so round-trips stay exact.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        raw.parse().map_err(de::Error::custom)
    }
}

/// A sign, `+1` or `-1`. Closed under multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn as_rational(self) -> Rational {
        Rational::from_integer(self.value())
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}1", self.symbol())
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// One of the three Pauli axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A signed Pauli operator, one of `±X, ±Y, ±Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPauli {
    pub axis: Axis,
    pub sign: Sign,
}

impl SignedPauli {
    pub const fn new(axis: Axis, sign: Sign) -> Self {
        Self { axis, sign }
    }

    pub const fn plus(axis: Axis) -> Self {
        Self::new(axis, Sign::Plus)
    }

    pub const fn minus(axis: Axis) -> Self {
        Self::new(axis, Sign::Minus)
    }

    /// The six signed Paulis in `(axis, sign)` order.
    pub fn all() -> [SignedPauli; 6] {
        let mut out = [SignedPauli::plus(Axis::X); 6];
        let mut i = 0;
        for axis in Axis::ALL {
            for sign in Sign::BOTH {
                out[i] = SignedPauli::new(axis, sign);
                i += 1;
            }
        }
        out
    }
}

impl Neg for SignedPauli {
    type Output = SignedPauli;
    fn neg(self) -> SignedPauli {
        SignedPauli::new(self.axis, -self.sign)
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sign.symbol(), self.axis)
    }
}

/// A single-qubit Clifford element, stored as the images of X, Y, Z under
/// conjugation.
///
/// The images' axes are a permutation of `{X, Y, Z}` and the associated
/// signed permutation matrix has determinant +1; both are enforced at
/// construction, so every value of this type is a genuine Clifford
/// conjugation action. Equality, ordering, and hashing are by image,
/// which also makes the display name (an alias like `"H"` when one
/// exists, otherwise the canonical `"X:+Z Y:-Y Z:+X"` form) canonical.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliffordElement {
    image: [SignedPauli; 3],
}

impl CliffordElement {
    /// Builds the element mapping `X → image_x`, `Y → image_y`, `Z → image_z`.
    pub fn new(
        image_x: SignedPauli,
        image_y: SignedPauli,
        image_z: SignedPauli,
    ) -> Result<Self, AlgebraError> {
        let image = [image_x, image_y, image_z];
        let mut seen = [false; 3];
        for p in image {
            if seen[p.axis.index()] {
                return Err(AlgebraError::RepeatedImageAxis);
            }
            seen[p.axis.index()] = true;
        }
        if determinant(&image) != 1 {
            return Err(AlgebraError::OrientationReversing);
        }
        Ok(Self { image })
    }

    pub fn identity() -> Self {
        Self::named("I")
    }

    /// Conjugation by the Pauli X matrix: `(X, Y, Z) → (X, -Y, -Z)`.
    pub fn pauli_x() -> Self {
        Self::named("X")
    }

    /// Conjugation by the Pauli Y matrix: `(X, Y, Z) → (-X, Y, -Z)`.
    pub fn pauli_y() -> Self {
        Self::named("Y")
    }

    /// Conjugation by the Pauli Z matrix: `(X, Y, Z) → (-X, -Y, Z)`.
    pub fn pauli_z() -> Self {
        Self::named("Z")
    }

    /// Conjugation by the Hadamard: `(X, Y, Z) → (Z, -Y, X)`.
    pub fn hadamard() -> Self {
        Self::named("H")
    }

    /// Conjugation by the phase gate: `(X, Y, Z) → (Y, -X, Z)`.
    pub fn phase() -> Self {
        Self::named("S")
    }

    fn named(alias: &str) -> Self {
        alias_table()
            .iter()
            .find(|(name, _)| *name == alias)
            .map(|(_, c)| *c)
            .expect("alias table covers the named constructors")
    }

    /// Image of an axis under conjugation.
    pub fn image_of_axis(&self, axis: Axis) -> SignedPauli {
        self.image[axis.index()]
    }

    /// Applies the conjugation action to a signed Pauli. Sign-linear:
    /// `act(-p) = -act(p)`.
    pub fn act(&self, p: SignedPauli) -> SignedPauli {
        let image = self.image_of_axis(p.axis);
        SignedPauli::new(image.axis, image.sign * p.sign)
    }

    /// Group product: the element acting as "first `other`, then `self`".
    pub fn compose(&self, other: &CliffordElement) -> CliffordElement {
        let image = [
            self.act(other.image[0]),
            self.act(other.image[1]),
            self.act(other.image[2]),
        ];
        debug_assert_eq!(determinant(&image), 1);
        CliffordElement { image }
    }

    pub fn inverse(&self) -> CliffordElement {
        let mut image = self.image;
        for axis in Axis::ALL {
            let p = self.image_of_axis(axis);
            image[p.axis.index()] = SignedPauli::new(axis, p.sign);
        }
        CliffordElement { image }
    }

    /// The sign `s` such that the induced map on ontic tuples sends the
    /// parity `xyz` to `s·xyz`.
    ///
    /// The axis permutation only reorders the three factors of the product
    /// `xyz`, so the character is the product of the three image signs
    /// (equivalently, since the determinant is +1, the sign of the axis
    /// permutation).
    pub fn parity_character(&self) -> Sign {
        self.image
            .iter()
            .map(|p| p.sign)
            .fold(Sign::Plus, |acc, s| acc * s)
    }

    /// The signed permutation matrix acting on Bloch vectors, with
    /// `matrix[row][col]`; column `q` is the image of the basis vector
    /// `e_q`.
    pub fn bloch_matrix(&self) -> [[i64; 3]; 3] {
        let mut m = [[0i64; 3]; 3];
        for axis in Axis::ALL {
            let p = self.image_of_axis(axis);
            m[p.axis.index()][axis.index()] = p.sign.value();
        }
        m
    }

    /// Canonical name string, e.g. `"X:+Z Y:-Y Z:+X"` for the Hadamard.
    pub fn canonical_name(&self) -> String {
        Axis::ALL
            .iter()
            .map(|&a| format!("{a}:{}", self.image_of_axis(a)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Well-known alias (`I`, `X`, `Y`, `Z`, `H`, `S`) when one exists,
    /// otherwise the canonical name.
    pub fn display_name(&self) -> String {
        alias_table()
            .iter()
            .find(|(_, c)| c == self)
            .map(|(name, _)| (*name).to_string())
            .unwrap_or_else(|| self.canonical_name())
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_name())
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CliffordElement {
    type Err = AlgebraError;

    /// Accepts an alias (`"H"`) or the canonical form (`"X:+Z Y:-Y Z:+X"`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((_, c)) = alias_table().iter().find(|(name, _)| *name == s) {
            return Ok(*c);
        }
        let malformed = || AlgebraError::MalformedClifford(s.to_string());
        let mut images = Vec::with_capacity(3);
        let mut parts = s.split_whitespace();
        for expected in Axis::ALL {
            let part = parts.next().ok_or_else(malformed)?;
            let (source, target) = part.split_once(':').ok_or_else(malformed)?;
            if source != expected.letter().to_string() {
                return Err(malformed());
            }
            images.push(parse_signed_pauli(target).ok_or_else(malformed)?);
        }
        if parts.next().is_some() {
            return Err(malformed());
        }
        CliffordElement::new(images[0], images[1], images[2])
    }
}

impl Serialize for CliffordElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CliffordElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        raw.parse().map_err(de::Error::custom)
    }
}

fn parse_signed_pauli(s: &str) -> Option<SignedPauli> {
    let mut chars = s.chars();
    let sign = match chars.next()? {
        '+' => Sign::Plus,
        '-' => Sign::Minus,
        _ => return None,
    };
    let axis = match chars.next()? {
        'X' => Axis::X,
        'Y' => Axis::Y,
        'Z' => Axis::Z,
        _ => return None,
    };
    if chars.next().is_some() {
        return None;
    }
    Some(SignedPauli::new(axis, sign))
}

/// Determinant of the signed permutation matrix: permutation sign times
/// the product of the image signs.
fn determinant(image: &[SignedPauli; 3]) -> i64 {
    let perm = [
        image[0].axis.index(),
        image[1].axis.index(),
        image[2].axis.index(),
    ];
    let mut perm_sign = 1i64;
    for i in 0..3 {
        for j in (i + 1)..3 {
            if perm[i] > perm[j] {
                perm_sign = -perm_sign;
            }
        }
    }
    let sign_product: i64 = image.iter().map(|p| p.sign.value()).product();
    perm_sign * sign_product
}

fn alias_table() -> &'static [(&'static str, CliffordElement)] {
    static TABLE: OnceLock<Vec<(&'static str, CliffordElement)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let sp = SignedPauli::new;
        let (x, y, z) = (Axis::X, Axis::Y, Axis::Z);
        let (p, m) = (Sign::Plus, Sign::Minus);
        let build = |ix, iy, iz| {
            CliffordElement::new(ix, iy, iz).expect("alias table entries are valid rotations")
        };
        vec![
            ("I", build(sp(x, p), sp(y, p), sp(z, p))),
            ("X", build(sp(x, p), sp(y, m), sp(z, m))),
            ("Y", build(sp(x, m), sp(y, p), sp(z, m))),
            ("Z", build(sp(x, m), sp(y, m), sp(z, p))),
            ("H", build(sp(z, p), sp(y, m), sp(x, p))),
            ("S", build(sp(y, p), sp(x, m), sp(z, p))),
        ]
    })
}

/// Closure of the generators under composition. With no generators this is
/// the trivial group `{I}`.
pub fn enumerate_group(generators: &[CliffordElement]) -> BTreeSet<CliffordElement> {
    let mut elements: BTreeSet<CliffordElement> = generators.iter().copied().collect();
    elements.insert(CliffordElement::identity());
    loop {
        let mut fresh = Vec::new();
        for a in &elements {
            for b in &elements {
                let c = a.compose(b);
                if !elements.contains(&c) {
                    fresh.push(c);
                }
            }
        }
        if fresh.is_empty() {
            return elements;
        }
        elements.extend(fresh);
    }
}

/// The full 24-element single-qubit Clifford group (as conjugation
/// actions), generated by the Hadamard and phase gates, in canonical order.
pub fn clifford_group() -> &'static [CliffordElement] {
    static GROUP: OnceLock<Vec<CliffordElement>> = OnceLock::new();
    GROUP.get_or_init(|| {
        let set = enumerate_group(&[CliffordElement::hadamard(), CliffordElement::phase()]);
        assert_eq!(set.len(), 24);
        set.into_iter().collect()
    })
}

/// Composition table as CSV: row = left factor, column = right factor,
/// cell = the product's name.
pub fn group_table_csv(elements: &[CliffordElement]) -> String {
    let mut out = String::new();
    out.push('*');
    for b in elements {
        out.push(',');
        out.push_str(&b.display_name());
    }
    out.push('\n');
    for a in elements {
        out.push_str(&a.display_name());
        for b in elements {
            out.push(',');
            out.push_str(&a.compose(b).display_name());
        }
        out.push('\n');
    }
    out
}
