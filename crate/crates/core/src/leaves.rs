//! Leaves of the canonical foliation.
//!
//! Every strip contributes one record standing for its whole family of
//! interior horizontal lines. Each unglued boundary interval is a boundary
//! leaf. Each gluing is one glued leaf, subdivided by whether its two
//! intervals are the entire sides they lie on:
//!
//! * `c1`: both on the same strip (necessarily opposite sides), each alone on
//!   its side. The strip closes up onto itself.
//! * `c2`: on distinct strips, each alone on its side.
//! * `c3`: at least one of the two shares its side with other intervals.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::model::{Gluing, IntervalRef, LeafId, StripId, StrippedSurface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafKind {
    Internal,
    Boundary,
    GluedC1,
    GluedC2,
    GluedC3,
}

impl LeafKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LeafKind::Internal => "internal",
            LeafKind::Boundary => "boundary",
            LeafKind::GluedC1 => "glued_c1",
            LeafKind::GluedC2 => "glued_c2",
            LeafKind::GluedC3 => "glued_c3",
        }
    }

    pub fn is_glued(self) -> bool {
        matches!(self, LeafKind::GluedC1 | LeafKind::GluedC2 | LeafKind::GluedC3)
    }

    /// Boundary and special leaves make up the invariant set.
    pub fn in_sigma(self) -> bool {
        matches!(self, LeafKind::Boundary | LeafKind::GluedC3)
    }
}

impl fmt::Display for LeafKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeafMembers {
    Strip(StripId),
    Interval(IntervalRef),
    Pair { src: IntervalRef, dst: IntervalRef },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafRecord {
    pub leaf_id: LeafId,
    pub kind: LeafKind,
    pub members: LeafMembers,
}

impl LeafRecord {
    pub fn intervals(&self) -> Vec<&IntervalRef> {
        match &self.members {
            LeafMembers::Strip(_) => vec![],
            LeafMembers::Interval(r) => vec![r],
            LeafMembers::Pair { src, dst } => vec![src, dst],
        }
    }

    pub fn to_json(&self) -> Value {
        let members: Vec<String> = match &self.members {
            LeafMembers::Strip(s) => vec![s.to_string()],
            LeafMembers::Interval(r) => vec![r.to_string()],
            LeafMembers::Pair { src, dst } => vec![src.to_string(), dst.to_string()],
        };
        json!({ "leaf_id": self.leaf_id, "kind": self.kind, "members": members })
    }
}

/// Kind of the glued leaf formed by `g`.
pub fn glued_kind(surface: &StrippedSurface, g: &Gluing) -> LeafKind {
    let whole = surface.is_sole(&g.src) && surface.is_sole(&g.dst);
    if !whole {
        LeafKind::GluedC3
    } else if g.src.strip == g.dst.strip {
        LeafKind::GluedC1
    } else {
        LeafKind::GluedC2
    }
}

/// The glued leaf id is the provenance of the gluing's source interval.
pub fn gluing_leaf_id(surface: &StrippedSurface, g: &Gluing) -> LeafId {
    surface.leaf_id_of(&g.src)
}

/// Classification on a surface already known to be valid.
pub(crate) fn classify_unchecked(surface: &StrippedSurface) -> Vec<LeafRecord> {
    let mut out: Vec<LeafRecord> = surface
        .strips
        .keys()
        .map(|id| LeafRecord { leaf_id: LeafId::interior(id), kind: LeafKind::Internal, members: LeafMembers::Strip(id.clone()) })
        .collect();
    let mut rest = Vec::new();
    for r in surface.interval_refs() {
        match surface.gluing_at(&r) {
            None => rest.push((r.clone(), LeafRecord {
                leaf_id: surface.leaf_id_of(&r),
                kind: LeafKind::Boundary,
                members: LeafMembers::Interval(r),
            })),
            Some(g) if g.src == r => rest.push((r, LeafRecord {
                leaf_id: gluing_leaf_id(surface, g),
                kind: glued_kind(surface, g),
                members: LeafMembers::Pair { src: g.src.clone(), dst: g.dst.clone() },
            })),
            Some(_) => {}
        }
    }
    rest.sort_by(|x, y| x.0.cmp(&y.0));
    out.extend(rest.into_iter().map(|(_, rec)| rec));
    out
}

pub fn classify_leaves(surface: &StrippedSurface) -> Result<Vec<LeafRecord>> {
    surface.ensure_valid()?;
    Ok(classify_unchecked(surface))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SigmaSet {
    pub leaf_ids: BTreeSet<LeafId>,
}

pub fn sigma_set(surface: &StrippedSurface) -> Result<SigmaSet> {
    let records = classify_leaves(surface)?;
    Ok(SigmaSet { leaf_ids: records.into_iter().filter(|r| r.kind.in_sigma()).map(|r| r.leaf_id).collect() })
}

pub fn is_reduced(surface: &StrippedSurface) -> Result<bool> {
    Ok(classify_leaves(surface)?.iter().all(|r| !matches!(r.kind, LeafKind::GluedC1 | LeafKind::GluedC2)))
}

/// Machine-readable leaf report.
pub fn leaves_json(records: &[LeafRecord]) -> Value {
    Value::Array(records.iter().map(LeafRecord::to_json).collect())
}
