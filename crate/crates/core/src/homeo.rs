//! Leaf-preserving homeomorphisms, recorded by their combinatorial shadow.
//!
//! On each strip such a homeomorphism has the form `(x, y) -> (lambda(x, y),
//! mu(y))`. The shadow keeps only the strip permutation, whether `mu` and
//! `lambda` reverse direction, and where each boundary interval goes with
//! which orientation. On a connected reduced surface this is enough to decide
//! membership in the identity path component: the map must fix every strip,
//! reverse nothing, and fix every boundary and special leaf with its
//! orientation.
//!
//! Interval orientations are measured in the coordinates of the interval
//! itself. A glued leaf is oriented by its source interval, so when the
//! shadow exchanges the two sides of a glued leaf the gluing map enters the
//! orientation count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::leaves::{classify_unchecked, LeafMembers, LeafRecord};
use crate::model::{strip_components, Diagnostics, GluingSign, IntervalRef, IssueCode, StripId, StrippedSurface};
use crate::numeric::{contraction_isotopy, q_deformation_isotopy, LambdaFamily, NumericError, PlMonotoneMap, Point2};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StripSymmetry {
    pub src: StripId,
    pub dst: StripId,
    /// `mu` decreasing: the strip is turned upside down.
    pub y_flip: bool,
    /// `lambda(., y)` decreasing.
    pub x_flip: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalMapEntry {
    pub src: IntervalRef,
    pub dst: IntervalRef,
    pub orient: GluingSign,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FHomeoShadow {
    pub strip_map: Vec<StripSymmetry>,
    pub interval_map: Vec<IntervalMapEntry>,
}

impl FHomeoShadow {
    pub fn identity(surface: &StrippedSurface) -> Self {
        FHomeoShadow {
            strip_map: surface
                .strips
                .keys()
                .map(|id| StripSymmetry { src: id.clone(), dst: id.clone(), y_flip: false, x_flip: false })
                .collect(),
            interval_map: surface
                .interval_refs()
                .into_iter()
                .map(|r| IntervalMapEntry { src: r.clone(), dst: r, orient: GluingSign::Preserving })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Entries sorted by source.
    pub fn to_json(&self) -> Value {
        let mut s = self.clone();
        s.canonicalize();
        serde_json::to_value(&s).expect("shadow always serializes")
    }

    pub fn canonicalize(&mut self) {
        self.strip_map.sort_by(|a, b| a.src.cmp(&b.src));
        self.interval_map.sort_by(|a, b| a.src.cmp(&b.src));
    }

    pub fn strip_image(&self, s: &StripId) -> Option<&StripSymmetry> {
        self.strip_map.iter().find(|e| &e.src == s)
    }

    pub fn interval_image(&self, r: &IntervalRef) -> Option<&IntervalMapEntry> {
        self.interval_map.iter().find(|e| &e.src == r)
    }

    /// `self ∘ first`. `None` if some image of `first` has no entry in
    /// `self`.
    pub fn compose(&self, first: &FHomeoShadow) -> Option<FHomeoShadow> {
        let strips: BTreeMap<&StripId, &StripSymmetry> = self.strip_map.iter().map(|e| (&e.src, e)).collect();
        let ivs: BTreeMap<&IntervalRef, &IntervalMapEntry> = self.interval_map.iter().map(|e| (&e.src, e)).collect();
        let strip_map = first
            .strip_map
            .iter()
            .map(|e| {
                let g = strips.get(&e.dst)?;
                Some(StripSymmetry { src: e.src.clone(), dst: g.dst.clone(), y_flip: e.y_flip ^ g.y_flip, x_flip: e.x_flip ^ g.x_flip })
            })
            .collect::<Option<Vec<_>>>()?;
        let interval_map = first
            .interval_map
            .iter()
            .map(|e| {
                let g = ivs.get(&e.dst)?;
                Some(IntervalMapEntry { src: e.src.clone(), dst: g.dst.clone(), orient: e.orient.compose(g.orient) })
            })
            .collect::<Option<Vec<_>>>()?;
        let mut out = FHomeoShadow { strip_map, interval_map };
        out.canonicalize();
        Some(out)
    }

    pub fn inverse(&self) -> FHomeoShadow {
        let mut out = FHomeoShadow {
            strip_map: self
                .strip_map
                .iter()
                .map(|e| StripSymmetry { src: e.dst.clone(), dst: e.src.clone(), y_flip: e.y_flip, x_flip: e.x_flip })
                .collect(),
            interval_map: self
                .interval_map
                .iter()
                .map(|e| IntervalMapEntry { src: e.dst.clone(), dst: e.src.clone(), orient: e.orient })
                .collect(),
        };
        out.canonicalize();
        out
    }
}

pub fn validate_shadow(surface: &StrippedSurface, shadow: &FHomeoShadow) -> Diagnostics {
    let mut diag = Diagnostics::default();

    let mut strip_src: BTreeMap<&StripId, &StripSymmetry> = BTreeMap::new();
    let mut strip_dst: BTreeSet<&StripId> = BTreeSet::new();
    for e in &shadow.strip_map {
        for s in [&e.src, &e.dst] {
            if !surface.strips.contains_key(s) {
                diag.push(IssueCode::UnknownStrip, s, format!("no strip named `{s}`"));
            }
        }
        if strip_src.insert(&e.src, e).is_some() {
            diag.push(IssueCode::StripMapNotPermutation, &e.src, "strip listed twice as a source");
        }
        if !strip_dst.insert(&e.dst) {
            diag.push(IssueCode::StripMapNotPermutation, &e.dst, "strip listed twice as a target");
        }
    }
    for id in surface.strips.keys() {
        if !strip_src.contains_key(id) {
            diag.push(IssueCode::StripMapNotPermutation, id, "strip has no image");
        }
    }

    let mut iv_src: BTreeMap<&IntervalRef, &IntervalMapEntry> = BTreeMap::new();
    let mut iv_dst: BTreeSet<&IntervalRef> = BTreeSet::new();
    for e in &shadow.interval_map {
        for r in [&e.src, &e.dst] {
            if surface.interval(r).is_none() {
                diag.push(IssueCode::UnknownInterval, r, format!("no interval {r}"));
            }
        }
        if iv_src.insert(&e.src, e).is_some() {
            diag.push(IssueCode::IntervalMapNotBijection, &e.src, "interval listed twice as a source");
        }
        if !iv_dst.insert(&e.dst) {
            diag.push(IssueCode::IntervalMapNotBijection, &e.dst, "interval listed twice as a target");
        }
    }
    for r in surface.interval_refs() {
        if !iv_src.contains_key(&r) {
            diag.push(IssueCode::IntervalMapNotBijection, &r, "interval has no image");
        }
    }

    for e in &shadow.interval_map {
        let Some(sym) = strip_src.get(&e.src.strip) else { continue };
        if e.dst.strip != sym.dst {
            diag.push(
                IssueCode::StripMismatch,
                &e.src,
                format!("lands on `{}` but strip `{}` goes to `{}`", e.dst.strip, e.src.strip, sym.dst),
            );
        }
        let side = if sym.y_flip { e.src.side.opposite() } else { e.src.side };
        if e.dst.side != side {
            diag.push(IssueCode::SideParity, &e.src, format!("lands on side {} but y_flip = {}", e.dst.side, sym.y_flip));
        }
        let glued_src = surface.gluing_at(&e.src).is_some();
        let glued_dst = surface.gluing_at(&e.dst).is_some();
        if glued_src != glued_dst {
            diag.push(IssueCode::LeafkindMismatch, &e.src, format!("maps a {} interval onto a {} one", kind_word(glued_src), kind_word(glued_dst)));
        }
    }

    for g in &surface.gluings {
        let (Some(ey), Some(ex)) = (iv_src.get(&g.src), iv_src.get(&g.dst)) else { continue };
        match surface.gluing_at(&ey.dst) {
            Some(h) if h.partner(&ey.dst) == Some(&ex.dst) => {
                let want = ey.orient.compose(g.sign).compose(ex.orient);
                if h.sign != want {
                    diag.push(
                        IssueCode::GluingNotEquivariant,
                        &g.src,
                        format!("image gluing has sign {} but the shadow forces {want}", h.sign),
                    );
                }
            }
            _ => diag.push(
                IssueCode::GluingNotEquivariant,
                &g.src,
                format!("{} and {} are glued but their images {} and {} are not", g.src, g.dst, ey.dst, ex.dst),
            ),
        }
    }
    diag
}

fn kind_word(glued: bool) -> &'static str {
    if glued {
        "glued"
    } else {
        "boundary"
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    /// every strip is mapped to itself
    A,
    /// neither `mu` nor `lambda` reverses direction
    B,
    /// every leaf of the invariant set is fixed with its orientation
    C,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::A => "A",
            Condition::B => "B",
            Condition::C => "C",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub condition: Condition,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub failures: Vec<Failure>,
}

impl Verdict {
    pub fn in_h0(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn conditions(&self) -> BTreeSet<Condition> {
        self.failures.iter().map(|f| f.condition).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({ "in_H0": self.in_h0(), "failures": self.failures })
    }
}

/// Identity-component checks against one fixed surface. The preconditions
/// and the leaf classification are computed once, so many shadows can be
/// checked cheaply.
#[derive(Clone, Debug)]
pub struct ShadowChecker<'a> {
    surface: &'a StrippedSurface,
    sigma: Vec<LeafRecord>,
}

impl<'a> ShadowChecker<'a> {
    /// Fails unless `surface` is valid, connected and reduced, in that order.
    pub fn new(surface: &'a StrippedSurface) -> Result<Self> {
        surface.ensure_valid()?;
        let parts = strip_components(surface).len();
        if parts != 1 {
            return Err(Error::NotConnected(parts));
        }
        let records = classify_unchecked(surface);
        if let Some(r) = records.iter().find(|r| r.kind.is_glued() && !r.kind.in_sigma()) {
            return Err(Error::NotReduced(r.leaf_id.to_string()));
        }
        Ok(ShadowChecker { surface, sigma: records.into_iter().filter(|r| r.kind.in_sigma()).collect() })
    }

    pub fn surface(&self) -> &StrippedSurface {
        self.surface
    }

    pub fn check(&self, shadow: &FHomeoShadow) -> Result<Verdict> {
        let diag = validate_shadow(self.surface, shadow);
        if !diag.ok() {
            return Err(Error::InvalidShadow(diag));
        }
        let mut failures = Vec::new();
        let mut strips: Vec<&StripSymmetry> = shadow.strip_map.iter().collect();
        strips.sort_by(|a, b| a.src.cmp(&b.src));
        for e in &strips {
            if e.src != e.dst {
                failures.push(Failure { condition: Condition::A, witness: e.src.to_string() });
            }
        }
        for e in &strips {
            if e.y_flip {
                failures.push(Failure { condition: Condition::B, witness: format!("{}.y_flip", e.src) });
            }
            if e.x_flip {
                failures.push(Failure { condition: Condition::B, witness: format!("{}.x_flip", e.src) });
            }
        }
        for rec in &self.sigma {
            let fixed = match &rec.members {
                LeafMembers::Interval(r) => {
                    let e = shadow.interval_image(r).expect("validated");
                    e.dst == *r && e.orient == GluingSign::Preserving
                }
                LeafMembers::Pair { src, dst } => {
                    let e = shadow.interval_image(src).expect("validated");
                    let sign = self.surface.gluing_at(src).expect("glued").sign;
                    if e.dst == *src {
                        e.orient == GluingSign::Preserving
                    } else if e.dst == *dst {
                        e.orient.compose(sign) == GluingSign::Preserving
                    } else {
                        false
                    }
                }
                LeafMembers::Strip(_) => true,
            };
            if !fixed {
                failures.push(Failure { condition: Condition::C, witness: rec.leaf_id.to_string() });
            }
        }
        Ok(Verdict { failures })
    }
}

pub fn check_identity_component(surface: &StrippedSurface, shadow: &FHomeoShadow) -> Result<Verdict> {
    ShadowChecker::new(surface)?.check(shadow)
}

/// Sampled `lambda` and `mu` of one strip.
#[derive(Clone, Debug, PartialEq)]
pub struct StripSample {
    pub lambda: LambdaFamily,
    pub mu: PlMonotoneMap,
}

impl StripSample {
    pub fn identity() -> Self {
        StripSample { lambda: LambdaFamily::identity(), mu: PlMonotoneMap::identity() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StripWitness {
    pub strip: StripId,
    pub lambda: LambdaFamily,
    pub mu: PlMonotoneMap,
}

/// Two-stage deformation of a sampled homeomorphism to the identity: first
/// `mu` is straightened with `lambda` frozen, then `lambda` is moved along
/// straight lines to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotopyWitness {
    pub strips: Vec<StripWitness>,
}

impl IsotopyWitness {
    pub fn strip(&self, id: &StripId) -> Option<&StripWitness> {
        self.strips.iter().find(|w| &w.strip == id)
    }

    /// Stage 1 at `t = 0`.
    pub fn sampled_map(&self, id: &StripId, p: Point2) -> std::result::Result<Point2, NumericError> {
        self.stage1(id, p, 0.0)
    }

    pub fn stage1(&self, id: &StripId, p: Point2, t: f64) -> std::result::Result<Point2, NumericError> {
        let w = self.strip(id).ok_or(NumericError::OutOfDomain { x: p.x, y: p.y })?;
        q_deformation_isotopy(&w.lambda, &w.mu, p, t)
    }

    pub fn stage2(&self, id: &StripId, p: Point2, t: f64) -> std::result::Result<Point2, NumericError> {
        let w = self.strip(id).ok_or(NumericError::OutOfDomain { x: p.x, y: p.y })?;
        contraction_isotopy(&w.lambda, p, t)
    }

    pub fn to_json(&self) -> Value {
        let pl = |m: &PlMonotoneMap| m.breakpoints().map(|(a, b)| json!([a, b])).collect::<Vec<_>>();
        json!({
            "stages": [
                { "stage": 1, "moves": "mu", "formula": "(lambda(x,y), t*y + (1-t)*mu(y))" },
                { "stage": 2, "moves": "lambda", "formula": "((1-t)*lambda(x,y) + t*x, y)" },
            ],
            "strips": self.strips.iter().map(|w| json!({
                "strip": w.strip,
                "lambda": w.lambda.levels().iter().map(|(y, m)| json!({ "y": y, "map": pl(m) })).collect::<Vec<_>>(),
                "mu": pl(&w.mu),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Builds the deformation for a shadow in the identity component. Strips
/// without a sample use the identity.
pub fn isotopy_witness(
    surface: &StrippedSurface,
    shadow: &FHomeoShadow,
    samples: &BTreeMap<StripId, StripSample>,
) -> Result<IsotopyWitness> {
    if !check_identity_component(surface, shadow)?.in_h0() {
        return Err(Error::NotInH0);
    }
    if let Some(extra) = samples.keys().find(|k| !surface.strips.contains_key(*k)) {
        return Err(Error::InconsistentSamples(format!("no strip named `{extra}`")));
    }
    let mut strips = Vec::new();
    for id in surface.strips.keys() {
        let sample = samples.get(id).cloned().unwrap_or_else(StripSample::identity);
        if !sample.mu.is_increasing() {
            return Err(Error::InconsistentSamples(format!("mu on `{id}` is decreasing")));
        }
        if (sample.mu.eval(-1.0) + 1.0).abs() > 1e-12 || (sample.mu.eval(1.0) - 1.0).abs() > 1e-12 {
            return Err(Error::InconsistentSamples(format!("mu on `{id}` does not fix -1 and 1")));
        }
        strips.push(StripWitness { strip: id.clone(), lambda: sample.lambda, mu: sample.mu });
    }
    Ok(IsotopyWitness { strips })
}
