//! Rewriting a surface to normal form.
//!
//! Strips carrying `c1`/`c2` leaves form a graph in which every vertex has
//! degree 1 or 2, so each component is a finite path, a single loop or a
//! cycle. Paths are merged strip by strip until no `c2` leaf is left.
//! Cycles are merged until one strip glued to itself remains, and that
//! strip is an open cylinder or an open Möbius band depending on the sign of
//! its last gluing.
//!
//! Every merge first normalizes the `c2` gluing with strip flips so that it
//! runs from the whole top of a lower strip to the whole bottom of an upper
//! strip and preserves orientation. The merged strip keeps the lower strip's
//! coordinates; the upper strip's top intervals are carried over through the
//! inverse gluing map extended affinely to the whole line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::dsl::surface_json;
use crate::error::{Error, Result};
use crate::leaves::{classify_unchecked, glued_kind, gluing_leaf_id, LeafKind};
use crate::model::{
    affine_gluing_map, strip_components, GluingSign, Interval, IntervalRef, LeafId, Side, StripId, StrippedSurface,
};
use crate::unionfind::ParityUnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlipAxis {
    /// `(x, y) -> (x, -y)`: swaps the two sides.
    Vertical,
    /// `(x, y) -> (-x, y)`: mirrors every interval and reverses orientations.
    Horizontal,
}

impl FlipAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            FlipAxis::Vertical => "vertical",
            FlipAxis::Horizontal => "horizontal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub leaf: LeafId,
    pub ends: (StripId, StripId),
}

impl GraphEdge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionGraph {
    pub vertices: BTreeSet<StripId>,
    pub edges: Vec<GraphEdge>,
}

/// A connected piece of a [`ReductionGraph`], as vertex ids and indices into
/// `edges`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphComponent {
    pub vertices: BTreeSet<StripId>,
    pub edges: Vec<usize>,
}

impl ReductionGraph {
    /// Loops count twice.
    pub fn degree(&self, v: &StripId) -> usize {
        self.edges
            .iter()
            .map(|e| (e.ends.0 == *v) as usize + (e.ends.1 == *v) as usize)
            .sum()
    }

    pub fn components(&self) -> Vec<GraphComponent> {
        let ids: Vec<&StripId> = self.vertices.iter().collect();
        let index: BTreeMap<&StripId, usize> = ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut uf = ParityUnionFind::new(ids.len());
        for e in &self.edges {
            let (a, b) = (index[&e.ends.0], index[&e.ends.1]);
            if !uf.same(a, b) {
                uf.union(a, b, false).expect("distinct sets never conflict");
            }
        }
        uf.groups()
            .into_iter()
            .map(|group| {
                let vertices: BTreeSet<StripId> = group.iter().map(|&i| ids[i].clone()).collect();
                let edges = (0..self.edges.len()).filter(|&k| vertices.contains(&self.edges[k].ends.0)).collect();
                GraphComponent { vertices, edges }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentShape {
    FinitePath(usize),
    Loop,
    Cycle(usize),
}

impl ComponentShape {
    pub fn to_json(self) -> Value {
        match self {
            ComponentShape::FinitePath(n) => json!({ "shape": "path", "edges": n }),
            ComponentShape::Loop => json!({ "shape": "loop", "edges": 1 }),
            ComponentShape::Cycle(n) => json!({ "shape": "cycle", "edges": n }),
        }
    }
}

impl fmt::Display for ComponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentShape::FinitePath(n) => write!(f, "path({n})"),
            ComponentShape::Loop => f.write_str("loop"),
            ComponentShape::Cycle(n) => write!(f, "cycle({n})"),
        }
    }
}

pub fn build_graph(surface: &StrippedSurface) -> Result<ReductionGraph> {
    surface.ensure_valid()?;
    let mut graph = ReductionGraph::default();
    for g in &surface.gluings {
        if matches!(glued_kind(surface, g), LeafKind::GluedC1 | LeafKind::GluedC2) {
            graph.vertices.insert(g.src.strip.clone());
            graph.vertices.insert(g.dst.strip.clone());
            graph.edges.push(GraphEdge { leaf: gluing_leaf_id(surface, g), ends: (g.src.strip.clone(), g.dst.strip.clone()) });
        }
    }
    graph.edges.sort_by(|x, y| x.leaf.cmp(&y.leaf));
    Ok(graph)
}

/// Shape of a connected component by degree counting.
pub fn classify_component(graph: &ReductionGraph, component: &GraphComponent) -> Result<ComponentShape> {
    let v = component.vertices.len();
    let e = component.edges.len();
    let edges: Vec<&GraphEdge> = component
        .edges
        .iter()
        .map(|&k| graph.edges.get(k).ok_or(Error::MalformedComponent))
        .collect::<Result<_>>()?;
    if edges.iter().any(|ed| !component.vertices.contains(&ed.ends.0) || !component.vertices.contains(&ed.ends.1)) {
        return Err(Error::MalformedComponent);
    }
    if v == 0 || e == 0 {
        return Err(Error::MalformedComponent);
    }
    let degree = |x: &StripId| {
        edges.iter().map(|ed| (ed.ends.0 == *x) as usize + (ed.ends.1 == *x) as usize).sum::<usize>()
    };
    if v == 1 && e == 1 && edges[0].is_loop() {
        return Ok(ComponentShape::Loop);
    }
    if edges.iter().any(|ed| ed.is_loop()) {
        return Err(Error::MalformedComponent);
    }
    if e == v && v >= 2 && component.vertices.iter().all(|x| degree(x) == 2) {
        return Ok(ComponentShape::Cycle(e));
    }
    if e + 1 == v && component.vertices.iter().all(|x| (1..=2).contains(&degree(x))) {
        return Ok(ComponentShape::FinitePath(e));
    }
    Err(Error::MalformedComponent)
}

fn remap_refs(surface: &mut StrippedSurface, f: impl Fn(&IntervalRef) -> IntervalRef) {
    for g in &mut surface.gluings {
        g.src = f(&g.src);
        g.dst = f(&g.dst);
    }
    surface.provenance = std::mem::take(&mut surface.provenance).into_iter().map(|(r, l)| (f(&r), l)).collect();
}

pub fn flip_strip(surface: &StrippedSurface, strip: &StripId, axis: FlipAxis) -> Result<StrippedSurface> {
    let mut out = surface.clone();
    let s = out.strips.get_mut(strip).ok_or_else(|| Error::UnknownStrip(strip.to_string()))?;
    match axis {
        FlipAxis::Vertical => {
            std::mem::swap(&mut s.top, &mut s.bottom);
            remap_refs(&mut out, |r| {
                if &r.strip == strip {
                    IntervalRef { side: r.side.opposite(), ..r.clone() }
                } else {
                    r.clone()
                }
            });
        }
        FlipAxis::Horizontal => {
            let lens = [s.bottom.len(), s.top.len()];
            for side in [Side::Minus, Side::Plus] {
                let list = s.side_mut(side);
                *list = list.iter().rev().map(|iv| Interval { a: -&iv.b, b: -&iv.a }).collect();
            }
            for g in &mut out.gluings {
                // once per endpoint on the flipped strip: a self-gluing is conjugated, not reversed
                let hits = (&g.src.strip == strip) as u8 + (&g.dst.strip == strip) as u8;
                if hits == 1 {
                    g.sign = g.sign.flipped();
                }
            }
            remap_refs(&mut out, |r| {
                if &r.strip == strip {
                    let n = lens[(r.side == Side::Plus) as usize];
                    IntervalRef { index: n - 1 - r.index, ..r.clone() }
                } else {
                    r.clone()
                }
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeStep {
    pub leaf: LeafId,
    /// Strip whose coordinates survive; the merged strip keeps its id.
    pub lower: StripId,
    pub upper: StripId,
    pub flips: Vec<(StripId, FlipAxis)>,
}

fn find_gluing(surface: &StrippedSurface, leaf: &LeafId) -> Result<usize> {
    if let Some(k) = surface.gluings.iter().position(|g| &gluing_leaf_id(surface, g) == leaf) {
        return Ok(k);
    }
    let known = classify_unchecked(surface).iter().any(|r| &r.leaf_id == leaf);
    Err(if known { Error::NotC2(leaf.to_string()) } else { Error::UnknownLeaf(leaf.to_string()) })
}

fn with_provenance(surface: &StrippedSurface) -> StrippedSurface {
    let mut s = surface.clone();
    s.assign_default_provenance();
    s
}

/// Replaces the two strips joined by a `c2` leaf with a single strip in
/// which that leaf has become interior.
pub fn merge_along(surface: &StrippedSurface, leaf: &LeafId) -> Result<StrippedSurface> {
    merge_traced(surface, leaf).map(|(s, _)| s)
}

pub fn merge_traced(surface: &StrippedSurface, leaf: &LeafId) -> Result<(StrippedSurface, MergeStep)> {
    surface.ensure_valid()?;
    let mut s = with_provenance(surface);
    let k = find_gluing(&s, leaf)?;
    if glued_kind(&s, &s.gluings[k]) != LeafKind::GluedC2 {
        return Err(Error::NotC2(leaf.to_string()));
    }
    let g = s.gluings[k].clone();
    let mut flips = Vec::new();
    let (lower, upper) = match (g.src.side, g.dst.side) {
        (Side::Plus, Side::Minus) => (g.src.strip.clone(), g.dst.strip.clone()),
        (Side::Minus, Side::Plus) => (g.dst.strip.clone(), g.src.strip.clone()),
        (Side::Plus, Side::Plus) => {
            flips.push((g.dst.strip.clone(), FlipAxis::Vertical));
            (g.src.strip.clone(), g.dst.strip.clone())
        }
        (Side::Minus, Side::Minus) => {
            flips.push((g.src.strip.clone(), FlipAxis::Vertical));
            (g.src.strip.clone(), g.dst.strip.clone())
        }
    };
    if g.sign == GluingSign::Reversing {
        flips.push((upper.clone(), FlipAxis::Horizontal));
    }
    for (strip, axis) in &flips {
        s = flip_strip(&s, strip, *axis)?;
    }

    let k = find_gluing(&s, leaf)?;
    let g = s.gluings.remove(k);
    debug_assert_eq!(g.sign, GluingSign::Preserving);
    let lower_top = IntervalRef { strip: lower.clone(), side: Side::Plus, index: 0 };
    let upper_bottom = IntervalRef { strip: upper.clone(), side: Side::Minus, index: 0 };
    debug_assert!(g.touches(&lower_top) && g.touches(&upper_bottom));

    let upper_strip = s.strips.remove(&upper).expect("upper strip exists");
    let lower_strip = s.strips.get_mut(&lower).expect("lower strip exists");
    let transport = affine_gluing_map(&lower_strip.top[0], &upper_strip.bottom[0], GluingSign::Preserving)?.inverse();
    lower_strip.top = upper_strip
        .top
        .iter()
        .map(|iv| Interval { a: transport.apply(&iv.a), b: transport.apply(&iv.b) })
        .collect();

    s.provenance.remove(&lower_top);
    s.provenance.remove(&upper_bottom);
    remap_refs(&mut s, |r| {
        if r.strip == upper {
            debug_assert_eq!(r.side, Side::Plus);
            IntervalRef { strip: lower.clone(), ..r.clone() }
        } else {
            r.clone()
        }
    });
    s.canonicalize();
    Ok((s, MergeStep { leaf: leaf.clone(), lower, upper, flips }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LoopVerdict {
    Cylinder,
    Moebius,
}

/// Decides a strip glued to itself along both of its whole sides.
pub fn close_loop_classify(surface: &StrippedSurface, leaf: &LeafId) -> Result<LoopVerdict> {
    surface.ensure_valid()?;
    let s = with_provenance(surface);
    let k = find_gluing(&s, leaf).map_err(|e| match e {
        Error::NotC2(l) => Error::NotC1(l),
        other => other,
    })?;
    let g = &s.gluings[k];
    if glued_kind(&s, g) != LeafKind::GluedC1 {
        return Err(Error::NotC1(leaf.to_string()));
    }
    let others = s.gluings.iter().enumerate().any(|(j, h)| j != k && (h.src.strip == g.src.strip || h.dst.strip == g.src.strip));
    if others {
        return Err(Error::ComponentNotClosed(leaf.to_string()));
    }
    // c1 forces opposite sides, so the sign alone decides
    Ok(match g.sign {
        GluingSign::Preserving => LoopVerdict::Cylinder,
        GluingSign::Reversing => LoopVerdict::Moebius,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Cylinder,
    Moebius,
    Reduced,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Cylinder => "cylinder",
            Verdict::Moebius => "moebius",
            Verdict::Reduced => "reduced",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    Merge(MergeStep),
    CloseLoop { leaf: LeafId, strip: StripId, sign: GluingSign },
}

impl TraceStep {
    pub fn leaf(&self) -> &LeafId {
        match self {
            TraceStep::Merge(m) => &m.leaf,
            TraceStep::CloseLoop { leaf, .. } => leaf,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            TraceStep::Merge(m) => json!({
                "op": "merge",
                "leaf": m.leaf,
                "lower": m.lower,
                "upper": m.upper,
                "flips": m.flips.iter().map(|(s, a)| json!({ "strip": s, "axis": a.as_str() })).collect::<Vec<_>>(),
            }),
            TraceStep::CloseLoop { leaf, strip, sign } => json!({
                "op": "close_loop",
                "leaf": leaf,
                "strip": strip,
                "sign": sign,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentOutcome {
    /// Strip ids of the component in the input surface.
    pub strips: Vec<StripId>,
    /// Shapes of the reduction-graph pieces inside this component.
    pub shapes: Vec<ComponentShape>,
    pub verdict: Verdict,
    /// The final surface. For cylinder and Möbius verdicts this is the single
    /// self-glued strip.
    pub surface: StrippedSurface,
    pub trace: Vec<TraceStep>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub components: Vec<ComponentOutcome>,
}

impl ReductionOutcome {
    pub fn trace_len(&self) -> usize {
        self.components.iter().map(|c| c.trace.len()).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "components": self.components.iter().map(|c| json!({
                "verdict": c.verdict.as_str(),
                "strips": c.strips,
                "graph": c.shapes.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
                "surface": surface_json(&c.surface),
                "trace": c.trace.iter().map(TraceStep::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>()
        })
    }
}

pub fn reduce(surface: &StrippedSurface) -> Result<ReductionOutcome> {
    reduce_with(surface, |_| 0)
}

/// Like [`reduce`], with `choose` picking which of the currently available
/// `c2` leaves to merge next (it receives them in sorted order and returns
/// an index; out-of-range answers are taken modulo the length).
pub fn reduce_with(surface: &StrippedSurface, mut choose: impl FnMut(&[LeafId]) -> usize) -> Result<ReductionOutcome> {
    surface.ensure_valid()?;
    let surface = with_provenance(surface);
    let mut out = ReductionOutcome::default();
    for ids in strip_components(&surface) {
        let mut s = surface.restrict(&ids);
        let graph = build_graph(&s)?;
        let shapes = graph.components().iter().map(|c| classify_component(&graph, c)).collect::<Result<Vec<_>>>()?;
        let mut trace = Vec::new();
        let verdict = loop {
            let mut c1 = None;
            let mut c2 = Vec::new();
            for g in &s.gluings {
                match glued_kind(&s, g) {
                    LeafKind::GluedC1 => c1 = Some(g.clone()),
                    LeafKind::GluedC2 => c2.push(gluing_leaf_id(&s, g)),
                    _ => {}
                }
            }
            if let Some(g) = c1 {
                let leaf = gluing_leaf_id(&s, &g);
                let v = close_loop_classify(&s, &leaf)?;
                trace.push(TraceStep::CloseLoop { leaf, strip: g.src.strip.clone(), sign: g.sign });
                break match v {
                    LoopVerdict::Cylinder => Verdict::Cylinder,
                    LoopVerdict::Moebius => Verdict::Moebius,
                };
            }
            if c2.is_empty() {
                break Verdict::Reduced;
            }
            c2.sort();
            let pick = choose(&c2) % c2.len();
            let (next, step) = merge_traced(&s, &c2[pick])?;
            s = next;
            trace.push(TraceStep::Merge(step));
        };
        out.components.push(ComponentOutcome { strips: ids, shapes, verdict, surface: s, trace });
    }
    Ok(out)
}

/// Whether a connected surface admits a consistent choice of orientation
/// on every strip.
pub fn orientable(surface: &StrippedSurface) -> Result<bool> {
    surface.ensure_valid()?;
    let parts = strip_components(surface).len();
    if parts != 1 {
        return Err(Error::NotConnected(parts));
    }
    let index = surface.strip_index();
    let mut uf = ParityUnionFind::new(index.len());
    for g in &surface.gluings {
        let odd = g.sign.is_reversing() ^ (g.src.side == g.dst.side);
        if uf.union(index[&g.src.strip], index[&g.dst.strip], odd).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}
