//! Random surface generators and brute-force oracles shared by the
//! integration tests. The oracles deliberately avoid the library's own
//! classification and union-find code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use stripfol::{GluingSign, Interval, IntervalRef, ModelStrip, Rational, Side, StripId, StrippedSurface};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn strip_name(i: usize) -> String {
    format!("S{i:02}")
}

fn sign(rng: &mut impl Rng) -> GluingSign {
    if rng.gen_bool(0.5) {
        GluingSign::Preserving
    } else {
        GluingSign::Reversing
    }
}

/// `k` intervals with strictly increasing endpoints, so closures are
/// disjoint. Endpoints are multiples of 1/2 or 1/3.
fn random_side(rng: &mut impl Rng, k: usize) -> Vec<Interval> {
    let den = if rng.gen_bool(0.5) { 2 } else { 3 };
    let mut x: i64 = rng.gen_range(-12..=4);
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let a = x;
        let b = a + rng.gen_range(1..=6);
        out.push(Interval::new(Rational::new(a, den), Rational::new(b, den)));
        x = b + rng.gen_range(1..=4);
    }
    out
}

/// Biased towards one interval per side, so that full-side gluings are
/// common.
fn side_count(rng: &mut impl Rng, max_per_side: usize) -> usize {
    let k = match rng.gen_range(0..100) {
        0..=14 => 0,
        15..=59 => 1,
        60..=84 => 2,
        _ => 3,
    };
    k.min(max_per_side)
}

/// A valid surface with `1..=max_strips` strips; intervals are paired at
/// random and each pair is glued with probability `glue_p`.
pub fn random_surface(rng: &mut impl Rng, max_strips: usize, max_per_side: usize, glue_p: f64) -> StrippedSurface {
    let n = rng.gen_range(1..=max_strips);
    let mut s = StrippedSurface::new();
    for i in 0..n {
        let (kb, kt) = (side_count(rng, max_per_side), side_count(rng, max_per_side));
        let bottom = random_side(rng, kb);
        let top = random_side(rng, kt);
        s.add_strip(ModelStrip::new(strip_name(i)).with_side(Side::Minus, bottom).with_side(Side::Plus, top));
    }
    let mut refs = s.interval_refs();
    refs.shuffle(rng);
    for pair in refs.chunks_exact(2) {
        if rng.gen_bool(glue_p) {
            s = s.with_gluing(pair[0].clone(), pair[1].clone(), sign(rng));
        }
    }
    s.canonicalize();
    s.assign_default_provenance();
    s
}

/// Like [`random_surface`] but retried until connected.
pub fn random_connected_surface(rng: &mut impl Rng, max_strips: usize, max_per_side: usize) -> StrippedSurface {
    loop {
        let s = random_surface(rng, max_strips, max_per_side, 0.9);
        if components(&s).len() == 1 {
            return s;
        }
    }
}

/// A closed ring of `n` strips, each with one interval per side, where
/// strip `i` is glued to strip `i + 1` (mod `n`) along a random choice of
/// sides, random direction and random sign.
pub fn random_cycle_surface(rng: &mut impl Rng, max_strips: usize) -> StrippedSurface {
    let n = rng.gen_range(1..=max_strips);
    let mut s = StrippedSurface::new();
    let mut out_side = Vec::new();
    for i in 0..n {
        let bottom = random_side(rng, 1);
        let top = random_side(rng, 1);
        s.add_strip(ModelStrip::new(strip_name(i)).with_side(Side::Minus, bottom).with_side(Side::Plus, top));
        out_side.push(if rng.gen_bool(0.5) { Side::Plus } else { Side::Minus });
    }
    for i in 0..n {
        let j = (i + 1) % n;
        let a = IntervalRef::new(strip_name(i), out_side[i], 0);
        let b = IntervalRef::new(strip_name(j), out_side[j].opposite(), 0);
        let (src, dst) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        s = s.with_gluing(src, dst, sign(rng));
    }
    s.canonicalize();
    s.assign_default_provenance();
    s
}

/// Connected components by repeated graph search.
pub fn components(s: &StrippedSurface) -> Vec<Vec<StripId>> {
    let ids: Vec<StripId> = s.strips.keys().cloned().collect();
    let mut seen: BTreeMap<StripId, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for start in &ids {
        if seen.contains_key(start) {
            continue;
        }
        let c = out.len();
        let mut stack = vec![start.clone()];
        let mut comp = Vec::new();
        seen.insert(start.clone(), c);
        while let Some(v) = stack.pop() {
            comp.push(v.clone());
            for g in &s.gluings {
                for (a, b) in [(&g.src.strip, &g.dst.strip), (&g.dst.strip, &g.src.strip)] {
                    if *a == v && !seen.contains_key(b) {
                        seen.insert(b.clone(), c);
                        stack.push(b.clone());
                    }
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Internal,
    Boundary,
    C1,
    C2,
    C3,
}

/// Leaf kinds by direct counting: one internal leaf per strip, one boundary
/// leaf per unglued interval, one glued leaf per gluing.
pub fn oracle_kinds(s: &StrippedSurface) -> Vec<(String, Kind)> {
    let count = |r: &IntervalRef| s.strips[&r.strip].side(r.side).len();
    let mut out: Vec<(String, Kind)> = s.strips.keys().map(|k| (format!("{k}.interior"), Kind::Internal)).collect();
    let mut glued = std::collections::BTreeSet::new();
    for g in &s.gluings {
        glued.insert(g.src.clone());
        glued.insert(g.dst.clone());
        let kind = if count(&g.src) != 1 || count(&g.dst) != 1 {
            Kind::C3
        } else if g.src.strip == g.dst.strip {
            Kind::C1
        } else {
            Kind::C2
        };
        out.push((s.leaf_id_of(&g.src).to_string(), kind));
    }
    for (id, strip) in &s.strips {
        for side in [Side::Minus, Side::Plus] {
            for i in 0..strip.side(side).len() {
                let r = IntervalRef { strip: id.clone(), side, index: i };
                if !glued.contains(&r) {
                    out.push((s.leaf_id_of(&r).to_string(), Kind::Boundary));
                }
            }
        }
    }
    out.sort();
    out
}

pub fn kind_multiset(s: &StrippedSurface) -> BTreeMap<Kind, usize> {
    let mut m = BTreeMap::new();
    for (_, k) in oracle_kinds(s) {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

pub fn oracle_reduced(s: &StrippedSurface) -> bool {
    oracle_kinds(s).iter().all(|(_, k)| !matches!(k, Kind::C1 | Kind::C2))
}

/// Sign of the Jacobian of the gluing as a map between neighbourhoods in
/// the two strips' coordinates. Along the interval it is the slope of the
/// affine map; across it, leaving a strip through its top enters the other
/// strip moving down if it arrives at a bottom (+) or at a top (-), and
/// symmetrically for bottoms.
pub fn gluing_jacobian_sign(s: &StrippedSurface, g: &stripfol::Gluing) -> i32 {
    let src = s.interval(&g.src).unwrap();
    let dst = s.interval(&g.dst).unwrap();
    let (ds, dd) = (&src.b - &src.a, &dst.b - &dst.a);
    let along = match g.sign {
        GluingSign::Preserving => &dd / &ds,
        GluingSign::Reversing => -(&dd / &ds),
    };
    let along = if along.is_positive() { 1 } else { -1 };
    let across = if g.src.side == g.dst.side { -1 } else { 1 };
    along * across
}

/// Orientability by trying all 2^n choices of per-strip orientation (a strip
/// is either used as is or reflected in its core line).
pub fn oracle_orientable(s: &StrippedSurface) -> bool {
    let ids: Vec<&StripId> = s.strips.keys().collect();
    let n = ids.len();
    assert!(n <= 20);
    let idx: BTreeMap<&StripId, usize> = ids.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let jac: Vec<(usize, usize, i32)> =
        s.gluings.iter().map(|g| (idx[&g.src.strip], idx[&g.dst.strip], gluing_jacobian_sign(s, g))).collect();
    (0u32..1 << n).any(|mask| {
        let eps = |i: usize| if mask >> i & 1 == 1 { -1 } else { 1 };
        jac.iter().all(|&(a, b, j)| eps(a) * eps(b) * j > 0)
    })
}
