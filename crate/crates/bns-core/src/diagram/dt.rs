//! Dowker-Thistlethwaite codes and their planar realization.
//!
//! A DT code for an n-crossing knot pairs the odd strand positions
//! 1, 3, ..., 2n-1 with signed even positions. A positive entry means the
//! odd passage goes over at that crossing; a negative entry flips this.
//! Realization searches over the two transversal rotation choices per
//! crossing for an embedding with spherical Euler characteristic.

use crate::{Error, Result};

use super::{EdgeId, PlanarDiagram};

/// Strand positions 1..=2n paired up: `partner[p-1]` is the other visit of
/// the crossing visited at position p.
pub fn pairing(values: &[i64]) -> Result<Vec<usize>> {
    let n = values.len();
    if n == 0 {
        return Err(Error::MalformedToken("empty dt code".into()));
    }
    let mut partner = vec![0usize; 2 * n];
    let mut seen = vec![false; n];
    for (i, &v) in values.iter().enumerate() {
        let a = v.unsigned_abs() as usize;
        if a == 0 || a > 2 * n || a % 2 != 0 || seen[a / 2 - 1] {
            return Err(Error::MalformedToken(format!("dt entry {v}")));
        }
        seen[a / 2 - 1] = true;
        let odd = 2 * i + 1;
        partner[odd - 1] = a;
        partner[a - 1] = odd;
    }
    Ok(partner)
}

/// Find rotation choices (one bool per crossing) realizing the shadow in the
/// plane, or None if the code is not realizable.
pub fn realize(partner: &[usize]) -> Option<Vec<bool>> {
    let n = partner.len() / 2;
    let mut choices = vec![false; n];
    if n == 0 {
        return None;
    }
    // Exhaustive over 2^(n-1); the global reflection is fixed by pinning the
    // first crossing.
    let total: u64 = 1 << (n - 1);
    for mask in 0..total {
        for (i, c) in choices.iter_mut().enumerate().skip(1) {
            *c = (mask >> (i - 1)) & 1 == 1;
        }
        if face_count(partner, &choices) == n + 2 {
            return Some(choices.clone());
        }
    }
    None
}

/// Ends of crossing `ci` in counterclockwise order, as strand positions
/// (1..=2n). An "in" end is the position itself (the strand arrives there);
/// an "out" end is encoded as the position the departing edge leads to.
fn rotation(partner: &[usize], choices: &[bool], ci: usize) -> [(usize, bool); 4] {
    // (position, arriving?) with position 1-based; the odd visit of crossing
    // ci is at position 2ci+1.
    let o = 2 * ci + 1;
    let e = partner[o - 1];
    // Under/over does not matter for the shadow; slots 0 and 2 carry the odd
    // strand, slots 1 and 3 the even strand, in one of two interleavings.
    if !choices[ci] {
        [(o, true), (e, true), (o, false), (e, false)]
    } else {
        [(o, true), (e, false), (o, false), (e, true)]
    }
}

fn face_count(partner: &[usize], choices: &[bool]) -> usize {
    let n = partner.len() / 2;
    let m = 2 * n;
    // Directed half-edges: edge p runs from position p to position p+1
    // (cyclically); direction 0 is forward. Index = 2*(p-1) + dir.
    // slot_of[(pos, arriving)] lookup.
    let mut slot_of = vec![(0usize, 0usize); 2 * m]; // (crossing, slot) by end key
    let end_key = |pos: usize, arriving: bool| 2 * (pos - 1) + arriving as usize;
    for ci in 0..n {
        let rot = rotation(partner, choices, ci);
        for (s, &(pos, arr)) in rot.iter().enumerate() {
            slot_of[end_key(pos, arr)] = (ci, s);
        }
    }
    let mut seen = vec![false; 2 * m];
    let mut faces = 0;
    for start in 0..2 * m {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            // h = 2*(p-1) + dir; forward arrives at position p+1, backward at p.
            let p = h / 2 + 1;
            let dir = h % 2;
            let arrive_pos = if dir == 0 { p % m + 1 } else { p };
            let (ci, s) = slot_of[end_key(arrive_pos, true)];
            // When the strand leaves at a position, the out end sits at the
            // same crossing; find which out-slot corresponds.
            let (ci, s) = if dir == 0 {
                (ci, s)
            } else {
                // Backward along edge p arrives at the "out" end of position p.
                slot_of[end_key(p, false)]
            };
            let rot = rotation(partner, choices, ci);
            let (pos2, arr2) = rot[(s + 1) % 4];
            // Leave through the next slot counterclockwise.
            h = if arr2 {
                // Arriving end of pos2: leaving backward along edge pos2-1.
                let p2 = if pos2 == 1 { m } else { pos2 - 1 };
                2 * (p2 - 1) + 1
            } else {
                // Out end of pos2: leaving forward along edge pos2.
                2 * (pos2 - 1)
            };
        }
    }
    faces
}

/// Assemble the PD tuples given rotation choices and which passage is over.
pub fn build(
    partner: &[usize],
    choices: &[bool],
    odd_is_over: &[bool],
) -> Result<PlanarDiagram> {
    let n = partner.len() / 2;
    let m = 2 * n;
    let mut tuples = Vec::with_capacity(n);
    for ci in 0..n {
        let rot = rotation(partner, choices, ci);
        let o = 2 * ci + 1;
        let e = partner[o - 1];
        let under_in_pos = if odd_is_over[ci] { e } else { o };
        let slot0 = rot
            .iter()
            .position(|&(p, arr)| p == under_in_pos && arr)
            .unwrap();
        let mut t = [0 as EdgeId; 4];
        for k in 0..4 {
            let (pos, arr) = rot[(slot0 + k) % 4];
            // Edge id: arriving ends use the edge that terminates at pos,
            // out ends the edge starting there.
            let edge = if arr {
                if pos == 1 {
                    m
                } else {
                    pos - 1
                }
            } else {
                pos
            };
            t[k] = edge as EdgeId;
        }
        tuples.push(t);
    }
    PlanarDiagram::from_crossings(&tuples, None)
}

pub fn from_dt(values: &[i64]) -> Result<PlanarDiagram> {
    let partner = pairing(values)?;
    let choices = realize(&partner).ok_or(Error::UnrealizableDt)?;
    let odd_is_over: Vec<bool> = values.iter().map(|&v| v > 0).collect();
    build(&partner, &choices, &odd_is_over)
}
