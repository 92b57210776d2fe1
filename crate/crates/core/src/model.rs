//! Strips, boundary intervals, gluings and the surfaces built from them.
//!
//! A model strip is the open band `R x (-1, 1)` together with finitely many
//! open intervals on each of the lines `y = -1` (bottom, [`Side::Minus`]) and
//! `y = +1` (top, [`Side::Plus`]). A surface identifies pairs of those
//! intervals by affine maps. Gluings only record the orientation sign; the
//! affine map itself is always recomputed from the endpoints by
//! [`affine_gluing_map`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::unionfind::ParityUnionFind;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StripId(pub String);

impl StripId {
    pub fn new(s: impl Into<String>) -> Self {
        StripId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StripId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for StripId {
    fn from(s: &str) -> Self {
        StripId(s.to_string())
    }
}

/// Stable name of a leaf. Boundary and glued leaves keep the id they were
/// given at parse time through every rewrite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LeafId(pub String);

impl LeafId {
    pub fn new(s: impl Into<String>) -> Self {
        LeafId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn interior(strip: &StripId) -> Self {
        LeafId(format!("{strip}.interior"))
    }
}

impl fmt::Display for LeafId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for LeafId {
    fn from(s: &str) -> Self {
        LeafId(s.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `y = -1`
    Minus,
    /// `y = +1`
    Plus,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Side::Minus => "bottom",
            Side::Plus => "top",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GluingSign {
    Preserving,
    Reversing,
}

impl GluingSign {
    pub fn flipped(self) -> GluingSign {
        match self {
            GluingSign::Preserving => GluingSign::Reversing,
            GluingSign::Reversing => GluingSign::Preserving,
        }
    }

    /// Sign of a composition of two orientation classes.
    pub fn compose(self, other: GluingSign) -> GluingSign {
        if self == other {
            GluingSign::Preserving
        } else {
            GluingSign::Reversing
        }
    }

    pub fn is_reversing(self) -> bool {
        self == GluingSign::Reversing
    }

    pub fn symbol(self) -> &'static str {
        match self {
            GluingSign::Preserving => "+",
            GluingSign::Reversing => "-",
        }
    }
}

impl fmt::Display for GluingSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for GluingSign {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "+" => Ok(GluingSign::Preserving),
            "-" | "\u{2212}" => Ok(GluingSign::Reversing),
            other => Err(format!("expected `+` or `-`, found `{other}`")),
        }
    }
}

impl Serialize for GluingSign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for GluingSign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reference to one boundary interval: strip, side, and 0-based position in
/// that side's sorted list. Written `A.top[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalRef {
    pub strip: StripId,
    pub side: Side,
    pub index: usize,
}

impl IntervalRef {
    pub fn new(strip: impl Into<String>, side: Side, index: usize) -> Self {
        IntervalRef { strip: StripId(strip.into()), side, index }
    }
}

impl fmt::Display for IntervalRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}[{}]", self.strip, self.side, self.index)
    }
}

impl FromStr for IntervalRef {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || format!("malformed interval reference `{s}`");
        let (strip, rest) = s.split_once('.').ok_or_else(bad)?;
        let (side, rest) = rest.split_once('[').ok_or_else(bad)?;
        let index = rest.strip_suffix(']').ok_or_else(bad)?;
        let side = match side {
            "top" => Side::Plus,
            "bottom" => Side::Minus,
            _ => return Err(bad()),
        };
        if strip.is_empty() {
            return Err(bad());
        }
        let index = index.parse().map_err(|_| bad())?;
        Ok(IntervalRef { strip: StripId(strip.to_string()), side, index })
    }
}

impl Serialize for IntervalRef {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntervalRef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Open interval `(a, b)` on one side of a strip.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub a: Rational,
    pub b: Rational,
}

impl Interval {
    pub fn new(a: impl Into<Rational>, b: impl Into<Rational>) -> Self {
        Interval { a: a.into(), b: b.into() }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A boundary interval resolved against its strip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryInterval {
    pub reference: IntervalRef,
    pub a: Rational,
    pub b: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelStrip {
    pub id: StripId,
    pub bottom: Vec<Interval>,
    pub top: Vec<Interval>,
}

impl ModelStrip {
    pub fn new(id: impl Into<String>) -> Self {
        ModelStrip { id: StripId(id.into()), bottom: Vec::new(), top: Vec::new() }
    }

    pub fn with_side(mut self, side: Side, intervals: Vec<Interval>) -> Self {
        *self.side_mut(side) = intervals;
        self
    }

    pub fn side(&self, side: Side) -> &[Interval] {
        match side {
            Side::Minus => &self.bottom,
            Side::Plus => &self.top,
        }
    }

    pub fn side_mut(&mut self, side: Side) -> &mut Vec<Interval> {
        match side {
            Side::Minus => &mut self.bottom,
            Side::Plus => &mut self.top,
        }
    }

    pub fn interval_refs(&self) -> impl Iterator<Item = IntervalRef> + '_ {
        [Side::Minus, Side::Plus].into_iter().flat_map(move |side| {
            (0..self.side(side).len()).map(move |index| IntervalRef { strip: self.id.clone(), side, index })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    /// The interval the gluing map starts from.
    pub src: IntervalRef,
    /// The interval it lands on.
    pub dst: IntervalRef,
    pub sign: GluingSign,
}

impl Gluing {
    pub fn new(src: IntervalRef, dst: IntervalRef, sign: GluingSign) -> Self {
        Gluing { src, dst, sign }
    }

    pub fn touches(&self, r: &IntervalRef) -> bool {
        &self.src == r || &self.dst == r
    }

    pub fn partner(&self, r: &IntervalRef) -> Option<&IntervalRef> {
        if &self.src == r {
            Some(&self.dst)
        } else if &self.dst == r {
            Some(&self.src)
        } else {
            None
        }
    }
}

/// `t -> slope * t + intercept` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub slope: Rational,
    pub intercept: Rational,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap { slope: Rational::one(), intercept: Rational::zero() }
    }

    pub fn apply(&self, t: &Rational) -> Rational {
        &(&self.slope * t) + &self.intercept
    }

    pub fn apply_f64(&self, t: f64) -> f64 {
        self.slope.to_f64() * t + self.intercept.to_f64()
    }

    /// Panics on a zero slope, which [`affine_gluing_map`] never produces.
    pub fn inverse(&self) -> AffineMap {
        let slope = self.slope.recip();
        let intercept = -(&self.intercept * &slope);
        AffineMap { slope, intercept }
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap { slope: &self.slope * &inner.slope, intercept: self.apply(&inner.intercept) }
    }

    pub fn sign(&self) -> GluingSign {
        if self.slope.is_negative() {
            GluingSign::Reversing
        } else {
            GluingSign::Preserving
        }
    }
}

/// The unique affine homeomorphism `(a, b) -> (c, d)` with the given
/// orientation behaviour.
pub fn affine_gluing_map(src: &Interval, dst: &Interval, sign: GluingSign) -> Result<AffineMap> {
    let (a, b, c, d) = (&src.a, &src.b, &dst.a, &dst.b);
    if a >= b {
        return Err(Error::DegenerateInterval(src.to_string()));
    }
    if c >= d {
        return Err(Error::DegenerateInterval(dst.to_string()));
    }
    let width = b - a;
    let (slope, base) = match sign {
        GluingSign::Preserving => (&(d - c) / &width, c),
        GluingSign::Reversing => (&(c - d) / &width, d),
    };
    let intercept = base - &(a * &slope);
    Ok(AffineMap { slope, intercept })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IssueCode {
    EmptyInterval,
    Unsorted,
    ClosuresTouch,
    StripIdMismatch,
    UnknownStrip,
    UnknownInterval,
    SelfPair,
    IntervalReused,
    StripMapNotPermutation,
    IntervalMapNotBijection,
    StripMismatch,
    SideParity,
    LeafkindMismatch,
    GluingNotEquivariant,
}

impl IssueCode {
    pub fn as_str(self) -> &'static str {
        match self {
            IssueCode::EmptyInterval => "EMPTY_INTERVAL",
            IssueCode::Unsorted => "UNSORTED",
            IssueCode::ClosuresTouch => "CLOSURES_TOUCH",
            IssueCode::StripIdMismatch => "STRIP_ID_MISMATCH",
            IssueCode::UnknownStrip => "UNKNOWN_STRIP",
            IssueCode::UnknownInterval => "UNKNOWN_INTERVAL",
            IssueCode::SelfPair => "SELF_PAIR",
            IssueCode::IntervalReused => "INTERVAL_REUSED",
            IssueCode::StripMapNotPermutation => "STRIP_MAP_NOT_PERMUTATION",
            IssueCode::IntervalMapNotBijection => "INTERVAL_MAP_NOT_BIJECTION",
            IssueCode::StripMismatch => "STRIP_MISMATCH",
            IssueCode::SideParity => "SIDE_PARITY",
            IssueCode::LeafkindMismatch => "LEAFKIND_MISMATCH",
            IssueCode::GluingNotEquivariant => "GLUING_NOT_EQUIVARIANT",
        }
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for IssueCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub code: IssueCode,
    pub message: String,
    #[serde(rename = "ref")]
    pub reference: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub issues: Vec<Issue>,
}

impl Diagnostics {
    pub fn ok(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn push(&mut self, code: IssueCode, reference: impl fmt::Display, message: impl Into<String>) {
        self.issues.push(Issue { code, message: message.into(), reference: reference.to_string() });
    }

    pub fn has(&self, code: IssueCode) -> bool {
        self.issues.iter().any(|i| i.code == code)
    }

    pub fn extend(&mut self, other: Diagnostics) {
        self.issues.extend(other.issues);
    }
}

impl Serialize for Diagnostics {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Diagnostics", 2)?;
        st.serialize_field("issues", &self.issues)?;
        st.serialize_field("ok", &self.ok())?;
        st.end()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return f.write_str("ok");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} at {}: {}", issue.code, issue.reference, issue.message)?;
        }
        Ok(())
    }
}

pub fn validate_strip(strip: &ModelStrip) -> Diagnostics {
    let mut diag = Diagnostics::default();
    for side in [Side::Minus, Side::Plus] {
        let list = strip.side(side);
        for (i, iv) in list.iter().enumerate() {
            let r = IntervalRef { strip: strip.id.clone(), side, index: i };
            if iv.a >= iv.b {
                diag.push(IssueCode::EmptyInterval, &r, format!("interval {iv} is empty"));
            }
        }
        for (i, pair) in list.windows(2).enumerate() {
            let r = format!("{}.{}[{}/{}]", strip.id, side, i, i + 1);
            if pair[1].a <= pair[0].a {
                diag.push(IssueCode::Unsorted, r, format!("{} does not come after {}", pair[1], pair[0]));
            } else if pair[0].b >= pair[1].a {
                diag.push(IssueCode::ClosuresTouch, r, format!("closures of {} and {} meet", pair[0], pair[1]));
            }
        }
    }
    diag
}

/// The quotient of finitely many model strips by affine identifications of
/// pairs of boundary intervals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrippedSurface {
    pub strips: BTreeMap<StripId, ModelStrip>,
    pub gluings: Vec<Gluing>,
    /// Stable leaf id of each boundary interval. Intervals missing from the
    /// map use their own reference as id.
    pub provenance: BTreeMap<IntervalRef, LeafId>,
}

impl StrippedSurface {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a strip, returning `false` (and leaving the surface
    /// unchanged) if the id is taken.
    pub fn add_strip(&mut self, strip: ModelStrip) -> bool {
        if self.strips.contains_key(&strip.id) {
            return false;
        }
        self.strips.insert(strip.id.clone(), strip);
        true
    }

    pub fn with_strip(mut self, strip: ModelStrip) -> Self {
        self.add_strip(strip);
        self
    }

    pub fn with_gluing(mut self, src: IntervalRef, dst: IntervalRef, sign: GluingSign) -> Self {
        self.gluings.push(Gluing::new(src, dst, sign));
        self
    }

    pub fn strip(&self, id: &StripId) -> Option<&ModelStrip> {
        self.strips.get(id)
    }

    pub fn interval(&self, r: &IntervalRef) -> Option<&Interval> {
        self.strips.get(&r.strip)?.side(r.side).get(r.index)
    }

    pub fn boundary_interval(&self, r: &IntervalRef) -> Option<BoundaryInterval> {
        let iv = self.interval(r)?;
        Some(BoundaryInterval { reference: r.clone(), a: iv.a.clone(), b: iv.b.clone() })
    }

    /// All interval references in (strip, side, index) order.
    pub fn interval_refs(&self) -> Vec<IntervalRef> {
        self.strips.values().flat_map(|s| s.interval_refs()).collect()
    }

    pub fn gluing_at(&self, r: &IntervalRef) -> Option<&Gluing> {
        self.gluings.iter().find(|g| g.touches(r))
    }

    /// Whether `r` is the only interval on its side, i.e. it is the whole of
    /// that side of the strip's boundary.
    pub fn is_sole(&self, r: &IntervalRef) -> bool {
        self.strips.get(&r.strip).map(|s| s.side(r.side).len() == 1).unwrap_or(false)
    }

    pub fn leaf_id_of(&self, r: &IntervalRef) -> LeafId {
        self.provenance.get(r).cloned().unwrap_or_else(|| LeafId(r.to_string()))
    }

    /// Gives every interval without a provenance entry its own reference as
    /// leaf id.
    pub fn assign_default_provenance(&mut self) {
        for r in self.interval_refs() {
            self.provenance.entry(r.clone()).or_insert_with(|| LeafId(r.to_string()));
        }
    }

    pub fn affine_map(&self, g: &Gluing) -> Result<AffineMap> {
        let src = self.interval(&g.src).ok_or_else(|| Error::UnknownStrip(g.src.to_string()))?;
        let dst = self.interval(&g.dst).ok_or_else(|| Error::UnknownStrip(g.dst.to_string()))?;
        affine_gluing_map(src, dst, g.sign)
    }

    /// Sorts gluings by source reference.
    pub fn canonicalize(&mut self) {
        self.gluings.sort_by(|x, y| (&x.src, &x.dst).cmp(&(&y.src, &y.dst)));
    }

    /// The sub-surface spanned by `ids` and the gluings among them.
    pub fn restrict(&self, ids: &[StripId]) -> StrippedSurface {
        let keep: BTreeSet<&StripId> = ids.iter().collect();
        StrippedSurface {
            strips: self.strips.iter().filter(|(k, _)| keep.contains(k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
            gluings: self
                .gluings
                .iter()
                .filter(|g| keep.contains(&g.src.strip) && keep.contains(&g.dst.strip))
                .cloned()
                .collect(),
            provenance: self
                .provenance
                .iter()
                .filter(|(r, _)| keep.contains(&r.strip))
                .map(|(r, l)| (r.clone(), l.clone()))
                .collect(),
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let diag = validate_surface(self);
        if diag.ok() {
            Ok(())
        } else {
            Err(Error::InvalidSurface(diag))
        }
    }

    pub(crate) fn strip_index(&self) -> BTreeMap<&StripId, usize> {
        self.strips.keys().enumerate().map(|(i, k)| (k, i)).collect()
    }
}

pub fn validate_surface(surface: &StrippedSurface) -> Diagnostics {
    let mut diag = Diagnostics::default();
    for (id, strip) in &surface.strips {
        if id != &strip.id {
            diag.push(IssueCode::StripIdMismatch, id, format!("strip stored under `{id}` is named `{}`", strip.id));
        }
        diag.extend(validate_strip(strip));
    }
    let mut uses: BTreeMap<&IntervalRef, usize> = BTreeMap::new();
    for g in &surface.gluings {
        let mut resolved = true;
        for r in [&g.src, &g.dst] {
            match surface.strips.get(&r.strip) {
                None => {
                    diag.push(IssueCode::UnknownStrip, r, format!("no strip named `{}`", r.strip));
                    resolved = false;
                }
                Some(s) if r.index >= s.side(r.side).len() => {
                    diag.push(IssueCode::UnknownInterval, r, format!("strip `{}` has no interval {r}", r.strip));
                    resolved = false;
                }
                Some(_) => {}
            }
        }
        if g.src == g.dst {
            diag.push(IssueCode::SelfPair, &g.src, "an interval cannot be glued to itself");
            *uses.entry(&g.src).or_default() += 1;
            continue;
        }
        if resolved {
            *uses.entry(&g.src).or_default() += 1;
            *uses.entry(&g.dst).or_default() += 1;
        }
    }
    for (r, n) in uses {
        if n > 1 {
            diag.push(IssueCode::IntervalReused, r, format!("interval appears in {n} gluings"));
        }
    }
    diag
}

/// Partition of strip ids into classes joined by gluings. Classes are sorted
/// internally and ordered by their smallest id.
pub fn strip_components(surface: &StrippedSurface) -> Vec<Vec<StripId>> {
    let index = surface.strip_index();
    let ids: Vec<&StripId> = surface.strips.keys().collect();
    let mut uf = ParityUnionFind::new(ids.len());
    for g in &surface.gluings {
        if let (Some(&a), Some(&b)) = (index.get(&g.src.strip), index.get(&g.dst.strip)) {
            if !uf.same(a, b) {
                uf.union(a, b, false).expect("distinct sets never conflict");
            }
        }
    }
    uf.groups().into_iter().map(|g| g.into_iter().map(|i| ids[i].clone()).collect()).collect()
}
