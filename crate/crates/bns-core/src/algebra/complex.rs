//! Filtered cochain complexes over a coefficient ring, with filtration-aware
//! Gauss elimination and the associated-graded computations.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ring::{Field, Ring, Zz};
use super::snf::{self, Mat, SmithOpts};
use super::GroupDescriptor;
use crate::{Error, Result};

/// One associated-graded group of the induced filtration on cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub q: i64,
    pub group: PieceGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PieceGroup {
    Free,
    Cyclic(BigInt),
    Zero,
}

struct Degree<R: Ring> {
    q: Vec<i64>,
    alive: Vec<bool>,
    /// Per generator: entries of the differential into the next degree.
    out: Vec<HashMap<u32, R::Elem>>,
    /// Per generator: which previous-degree generators map onto it.
    inc: Vec<HashSet<u32>>,
}

impl<R: Ring> Degree<R> {
    fn new() -> Self {
        Degree {
            q: Vec::new(),
            alive: Vec::new(),
            out: Vec::new(),
            inc: Vec::new(),
        }
    }
}

/// A finitely generated free cochain complex; every generator carries a
/// filtration degree q, and the differential never lowers q.
pub struct FilteredComplex<R: Ring> {
    ring: R,
    min_h: i64,
    degrees: Vec<Degree<R>>,
}

impl<R: Ring> FilteredComplex<R> {
    pub fn new(ring: R) -> Self {
        FilteredComplex {
            ring,
            min_h: 0,
            degrees: Vec::new(),
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn h_min(&self) -> i64 {
        self.min_h
    }

    pub fn h_max(&self) -> i64 {
        self.min_h + self.degrees.len() as i64 - 1
    }

    fn deg(&self, h: i64) -> Option<&Degree<R>> {
        if h < self.min_h {
            return None;
        }
        self.degrees.get((h - self.min_h) as usize)
    }

    fn deg_mut(&mut self, h: i64) -> &mut Degree<R> {
        if self.degrees.is_empty() {
            self.min_h = h;
            self.degrees.push(Degree::new());
        }
        while h < self.min_h {
            self.degrees.insert(0, Degree::new());
            self.min_h -= 1;
        }
        while h > self.h_max() {
            self.degrees.push(Degree::new());
        }
        &mut self.degrees[(h - self.min_h) as usize]
    }

    pub fn add_generator(&mut self, h: i64, q: i64) -> u32 {
        let d = self.deg_mut(h);
        d.q.push(q);
        d.alive.push(true);
        d.out.push(HashMap::new());
        d.inc.push(HashSet::new());
        (d.q.len() - 1) as u32
    }

    /// Accumulate a differential entry from generator `from` at degree h to
    /// generator `to` at degree h+1.
    pub fn add_entry(&mut self, h: i64, from: u32, to: u32, coeff: R::Elem) {
        if self.ring.is_zero(&coeff) {
            return;
        }
        let ring = self.ring.clone();
        debug_assert!(
            self.deg(h + 1).unwrap().q[to as usize] >= self.deg(h).unwrap().q[from as usize],
            "filtration monotonicity violated"
        );
        self.deg_mut(h + 1); // ensure the target degree exists
        let di = (h - self.min_h) as usize;
        let (lo, hi) = self.degrees.split_at_mut(di + 1);
        let src = &mut lo[di];
        let dst = &mut hi[0];
        let slot = src.out[from as usize].entry(to);
        let merged = match slot {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let nv = ring.add(e.get(), &coeff);
                if ring.is_zero(&nv) {
                    e.remove();
                    dst.inc[to as usize].remove(&from);
                    return;
                }
                *e.get_mut() = nv;
                true
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(coeff);
                false
            }
        };
        if !merged {
            dst.inc[to as usize].insert(from);
        }
    }

    pub fn is_alive(&self, h: i64, i: u32) -> bool {
        self.deg(h).is_some_and(|d| d.alive[i as usize])
    }

    pub fn q_of(&self, h: i64, i: u32) -> i64 {
        self.deg(h).unwrap().q[i as usize]
    }

    pub fn rank(&self, h: i64) -> usize {
        self.deg(h)
            .map_or(0, |d| d.alive.iter().filter(|&&a| a).count())
    }

    pub fn total_rank(&self) -> usize {
        (self.h_min()..=self.h_max()).map(|h| self.rank(h)).sum()
    }

    /// Alive generators at degree h as (index, q).
    pub fn generators(&self, h: i64) -> Vec<(u32, i64)> {
        match self.deg(h) {
            None => Vec::new(),
            Some(d) => d
                .alive
                .iter()
                .enumerate()
                .filter(|(_, &a)| a)
                .map(|(i, _)| (i as u32, d.q[i]))
                .collect(),
        }
    }

    pub fn entries_from(&self, h: i64, from: u32) -> Vec<(u32, R::Elem)> {
        match self.deg(h) {
            None => Vec::new(),
            Some(d) => {
                let mut v: Vec<(u32, R::Elem)> = d.out[from as usize]
                    .iter()
                    .map(|(&t, c)| (t, c.clone()))
                    .collect();
                v.sort_by_key(|&(t, _)| t);
                v
            }
        }
    }

    /// Apply the differential to a chain at degree h.
    pub fn apply_d(&self, h: i64, chain: &HashMap<u32, R::Elem>) -> HashMap<u32, R::Elem> {
        let mut out: HashMap<u32, R::Elem> = HashMap::new();
        if let Some(d) = self.deg(h) {
            for (&g, c) in chain {
                for (&t, e) in &d.out[g as usize] {
                    let add = self.ring.mul(c, e);
                    match out.entry(t) {
                        std::collections::hash_map::Entry::Occupied(mut o) => {
                            let nv = self.ring.add(o.get(), &add);
                            if self.ring.is_zero(&nv) {
                                o.remove();
                            } else {
                                *o.get_mut() = nv;
                            }
                        }
                        std::collections::hash_map::Entry::Vacant(v) => {
                            if !self.ring.is_zero(&add) {
                                v.insert(add);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Check d∘d = 0 over all degrees (test support; quadratic in entries).
    pub fn check_d_squared(&self) -> bool {
        for h in self.h_min()..=self.h_max() {
            for (g, _) in self.generators(h) {
                let one = self.ring.one();
                let chain = HashMap::from([(g, one)]);
                let dd = self.apply_d(h + 1, &self.apply_d(h, &chain));
                if !dd.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Cancel the differential entry a→b (must be a unit between equal
    /// filtration degrees) and apply the Gauss elimination correction to the
    /// surrounding entries. Returns the sources whose rows changed.
    fn cancel(&mut self, h: i64, a: u32, b: u32) -> Vec<u32> {
        let ring = self.ring.clone();
        let di = (h - self.min_h) as usize;

        let u = self.degrees[di].out[a as usize]
            .get(&b)
            .cloned()
            .expect("cancel: entry missing");
        debug_assert!(ring.is_unit(&u));
        debug_assert_eq!(self.degrees[di].q[a as usize], self.degrees[di + 1].q[b as usize]);
        let u_inv = ring.inv(&u);

        let row_a: Vec<(u32, R::Elem)> = self.degrees[di].out[a as usize]
            .iter()
            .filter(|(&z, _)| z != b)
            .map(|(&z, c)| (z, c.clone()))
            .collect();
        let col_b: Vec<(u32, R::Elem)> = self.degrees[di + 1].inc[b as usize]
            .iter()
            .filter(|&&y| y != a)
            .map(|&y| {
                let c = self.degrees[di].out[y as usize][&b].clone();
                (y, c)
            })
            .collect();

        // d'(y,z) = d(y,z) - d(y,b) u^{-1} d(a,z).
        for (y, cyb) in &col_b {
            let factor = ring.neg(&ring.mul(cyb, &u_inv));
            for (z, caz) in &row_a {
                let delta = ring.mul(&factor, caz);
                self.add_entry(h, *y, *z, delta);
            }
        }

        // Detach and kill a.
        let incoming_a: Vec<u32> = self.degrees[di].inc[a as usize].drain().collect();
        for w in incoming_a {
            self.degrees[di - 1].out[w as usize].remove(&a);
        }
        let out_a: Vec<u32> = self.degrees[di].out[a as usize].keys().copied().collect();
        for z in out_a {
            self.degrees[di + 1].inc[z as usize].remove(&a);
        }
        self.degrees[di].out[a as usize].clear();
        self.degrees[di].alive[a as usize] = false;

        // Detach and kill b.
        let incoming_b: Vec<u32> = self.degrees[di + 1].inc[b as usize].drain().collect();
        for y in &incoming_b {
            self.degrees[di].out[*y as usize].remove(&b);
        }
        let out_b: Vec<u32> = self.degrees[di + 1].out[b as usize]
            .keys()
            .copied()
            .collect();
        for z in out_b {
            self.degrees[di + 2].inc[z as usize].remove(&b);
        }
        self.degrees[di + 1].out[b as usize].clear();
        self.degrees[di + 1].alive[b as usize] = false;

        col_b.into_iter().map(|(y, _)| y).collect()
    }

    /// Cancel every unit entry between equal-q generators of degrees h and
    /// h+1. A Markowitz-style fill estimate picks among the unit pivots.
    pub fn reduce_layer(&mut self, h: i64) {
        if self.deg(h).is_none() || self.deg(h + 1).is_none() {
            return;
        }
        let di = (h - self.min_h) as usize;

        let n = self.degrees[di].q.len();
        let mut queued = vec![true; n];
        let mut work: VecDeque<u32> = (0..n as u32).collect();
        while let Some(y) = work.pop_front() {
            queued[y as usize] = false;
            loop {
                if !self.degrees[di].alive[y as usize] {
                    break;
                }
                // Best unit equal-q pivot in this row.
                let qy = self.degrees[di].q[y as usize];
                let row_len = self.degrees[di].out[y as usize].len();
                let mut best: Option<(u32, usize)> = None;
                for (&z, c) in &self.degrees[di].out[y as usize] {
                    if self.degrees[di + 1].q[z as usize] != qy || !self.ring.is_unit(c) {
                        continue;
                    }
                    let cost = (row_len - 1) * (self.degrees[di + 1].inc[z as usize].len() - 1);
                    if best.map_or(true, |(_, bc)| cost < bc) {
                        best = Some((z, cost));
                    }
                }
                let Some((z, _)) = best else { break };
                for touched in self.cancel(h, y, z) {
                    if !queued[touched as usize] {
                        queued[touched as usize] = true;
                        work.push_back(touched);
                    }
                }
            }
        }
    }

    /// Full reduction sweep, ascending through the degrees. One pass
    /// suffices: cancellations at a layer never create unit entries in
    /// layers already processed.
    pub fn gauss_reduce(&mut self) {
        for h in self.h_min()..=self.h_max() {
            self.reduce_layer(h);
        }
    }

    /// Drop dead generators and reindex.
    pub fn compact(&mut self) {
        let min_h = self.min_h;
        let maps: Vec<HashMap<u32, u32>> = self
            .degrees
            .iter()
            .map(|d| {
                let mut m = HashMap::new();
                let mut next = 0u32;
                for (i, &a) in d.alive.iter().enumerate() {
                    if a {
                        m.insert(i as u32, next);
                        next += 1;
                    }
                }
                m
            })
            .collect();
        let mut new_degrees = Vec::with_capacity(self.degrees.len());
        for (k, d) in self.degrees.iter().enumerate() {
            let mut nd: Degree<R> = Degree::new();
            for i in 0..d.q.len() {
                if !d.alive[i] {
                    continue;
                }
                nd.q.push(d.q[i]);
                nd.alive.push(true);
                nd.out.push(
                    d.out[i]
                        .iter()
                        .map(|(&t, c)| (maps[k + 1][&t], c.clone()))
                        .collect(),
                );
                nd.inc
                    .push(d.inc[i].iter().map(|&s| maps[k - 1][&s]).collect());
            }
            new_degrees.push(nd);
        }
        self.degrees = new_degrees;
        self.min_h = min_h;
    }

    /// The q-preserving part of the differential (the Khovanov complex).
    pub fn khovanov_part(&self) -> FilteredComplex<R> {
        let mut out = FilteredComplex::new(self.ring.clone());
        // Preserve indices: copy degrees wholesale, filtering entries.
        out.min_h = self.min_h;
        for d in &self.degrees {
            out.degrees.push(Degree {
                q: d.q.clone(),
                alive: d.alive.clone(),
                out: d.out.clone(),
                inc: d.inc.clone(),
            });
        }
        for k in 0..out.degrees.len() {
            let (lo, hi) = out.degrees.split_at_mut(k + 1);
            let cur = &mut lo[k];
            let Some(nxt) = hi.first_mut() else { continue };
            for (i, m) in cur.out.iter_mut().enumerate() {
                let qi = cur.q[i];
                m.retain(|&t, _| {
                    let keep = nxt.q[t as usize] == qi;
                    if !keep {
                        nxt.inc[t as usize].remove(&(i as u32));
                    }
                    keep
                });
            }
        }
        out
    }

    /// Dense matrix of the differential h → h+1 over the alive generators,
    /// together with the column and row generator indices.
    fn dense_block(&self, h: i64) -> (Vec<Vec<R::Elem>>, Vec<u32>, Vec<u32>) {
        let cols: Vec<u32> = self.generators(h).into_iter().map(|(i, _)| i).collect();
        let rows: Vec<u32> = self.generators(h + 1).into_iter().map(|(i, _)| i).collect();
        let rpos: HashMap<u32, usize> = rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut m = vec![vec![self.ring.zero(); cols.len()]; rows.len()];
        if let Some(d) = self.deg(h) {
            for (j, &ci) in cols.iter().enumerate() {
                for (&t, c) in &d.out[ci as usize] {
                    m[rpos[&t]][j] = c.clone();
                }
            }
        }
        (m, cols, rows)
    }
}

// --- Integral machinery ---

impl FilteredComplex<Zz> {
    /// Graded pieces H^(q) = A_q / A_{q+2} of the induced filtration on
    /// H^h, scanned from the largest generator q downwards.
    pub fn graded_pieces(&self, h: i64) -> Result<Vec<GradedPiece>> {
        let mut pieces = Vec::new();
        for (q, g) in self.graded_groups(h) {
            let group = if g.is_zero() {
                PieceGroup::Zero
            } else if g.free_rank == 1 && g.torsion.is_empty() {
                PieceGroup::Free
            } else if g.free_rank == 0 && g.torsion.len() == 1 {
                PieceGroup::Cyclic(g.torsion[0].clone())
            } else {
                return Err(Error::NonCyclicPiece(q));
            };
            pieces.push(GradedPiece { q, group });
        }
        // Zero pieces at the ends carry no information; the q-range is an
        // artifact of which generators survived reduction.
        while matches!(pieces.first(), Some(p) if matches!(p.group, PieceGroup::Zero)) {
            pieces.remove(0);
        }
        while matches!(pieces.last(), Some(p) if matches!(p.group, PieceGroup::Zero)) {
            pieces.pop();
        }
        Ok(pieces)
    }

    /// General associated-graded groups, without the cyclicity requirement.
    pub fn graded_groups(&self, h: i64) -> Vec<(i64, GroupDescriptor)> {
        let gens = self.generators(h);
        if gens.is_empty() {
            return Vec::new();
        }
        let dim = gens.len();
        let (d_out, cols, _) = self.dense_block(h);
        let (d_in, in_cols, in_rows) = self.dense_block(h - 1);
        debug_assert_eq!(in_rows.len(), dim);

        // Image lattice generators: columns of d_{h-1}.
        let b: Vec<Vec<BigInt>> = (0..in_cols.len())
            .map(|j| d_in.iter().map(|row| row[j].clone()).collect())
            .collect();

        let qmax = gens.iter().map(|&(_, q)| q).max().unwrap();
        let qmin = gens.iter().map(|&(_, q)| q).min().unwrap();

        // Kernel of d restricted to F_q, embedded in the full degree.
        let kernel_at = |level: i64| -> Vec<Vec<BigInt>> {
            let sel: Vec<usize> = (0..dim)
                .filter(|&j| self.q_of(h, cols[j]) >= level)
                .collect();
            if sel.is_empty() {
                return Vec::new();
            }
            let sub: Mat = d_out
                .iter()
                .map(|row| sel.iter().map(|&j| row[j].clone()).collect())
                .collect();
            let ker = if sub.is_empty() {
                snf::kernel_basis(&vec![vec![BigInt::zero(); sel.len()]])
            } else {
                snf::kernel_basis(&sub)
            };
            ker.into_iter()
                .map(|k| {
                    let mut v = vec![BigInt::zero(); dim];
                    for (t, &j) in sel.iter().enumerate() {
                        v[j] = k[t].clone();
                    }
                    v
                })
                .collect()
        };

        let mut out = Vec::new();
        let mut level = qmax;
        let mut upper = kernel_at(level + 2);
        while level >= qmin {
            let lower = kernel_at(level);
            let mut l1 = lower.clone();
            l1.extend(b.iter().cloned());
            let mut l2 = upper.clone();
            l2.extend(b.iter().cloned());
            let g = if l1.is_empty() {
                GroupDescriptor::zero()
            } else {
                snf::lattice_quotient(dim, &l1, &l2)
            };
            out.push((level, g));
            upper = lower;
            level -= 2;
        }
        out
    }

    /// Homology of the q-preserving differential per (h, q) — the integral
    /// Khovanov homology when applied to a Bar-Natan complex.
    pub fn integral_homology_table(&self) -> BTreeMap<(i64, i64), GroupDescriptor> {
        let mut kh = self.khovanov_part();
        kh.gauss_reduce();
        let mut table = BTreeMap::new();
        for h in kh.h_min()..=kh.h_max() {
            let gens = kh.generators(h);
            let qs: std::collections::BTreeSet<i64> = gens.iter().map(|&(_, q)| q).collect();
            for &q in &qs {
                let n = gens.iter().filter(|&&(_, gq)| gq == q).count();
                let rank_out = kh.block_rank_and_torsion(h, q).0;
                let (rank_in, torsion) = kh.block_rank_and_torsion(h - 1, q);
                let free = n - rank_out - rank_in;
                let g = GroupDescriptor {
                    free_rank: free,
                    torsion,
                };
                if !g.is_zero() {
                    table.insert((h, q), g);
                }
            }
        }
        table
    }

    /// Rank and nontrivial invariant factors of the block of entries from
    /// (h, q) to (h+1, q).
    fn block_rank_and_torsion(&self, h: i64, q: i64) -> (usize, Vec<BigInt>) {
        let cols: Vec<u32> = self
            .generators(h)
            .into_iter()
            .filter(|&(_, gq)| gq == q)
            .map(|(i, _)| i)
            .collect();
        let rows: Vec<u32> = self
            .generators(h + 1)
            .into_iter()
            .filter(|&(_, gq)| gq == q)
            .map(|(i, _)| i)
            .collect();
        if cols.is_empty() || rows.is_empty() {
            return (0, Vec::new());
        }
        let rpos: HashMap<u32, usize> = rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut m = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
        let d = self.deg(h).unwrap();
        for (j, &ci) in cols.iter().enumerate() {
            for (&t, c) in &d.out[ci as usize] {
                if let Some(&r) = rpos.get(&t) {
                    m[r][j] = c.clone();
                }
            }
        }
        let s = snf::smith(&m, &SmithOpts::none());
        let torsion: Vec<BigInt> = s.diag[..s.rank]
            .iter()
            .filter(|d| d.abs() > BigInt::from(1))
            .cloned()
            .collect();
        (s.rank, torsion)
    }

    /// Serialize to the debug dump format: `g <id> h=<h> q=<q>` lines then
    /// `d <from> <to> <coeff>` lines.
    pub fn to_dump(&self) -> String {
        let mut ids: HashMap<(i64, u32), usize> = HashMap::new();
        let mut out = String::new();
        let mut next = 0usize;
        for h in self.h_min()..=self.h_max() {
            for (i, q) in self.generators(h) {
                ids.insert((h, i), next);
                out.push_str(&format!("g {next} h={h} q={q}\n"));
                next += 1;
            }
        }
        for h in self.h_min()..=self.h_max() {
            for (i, _) in self.generators(h) {
                for (t, c) in self.entries_from(h, i) {
                    let from = ids[&(h, i)];
                    let to = ids[&(h + 1, t)];
                    out.push_str(&format!("d {from} {to} {c}\n"));
                }
            }
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<FilteredComplex<Zz>> {
        let bad = |line: &str| Error::BadDump(line.to_string());
        let mut cx = FilteredComplex::new(Zz);
        let mut gens: HashMap<u64, (i64, u32)> = HashMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.first() {
                Some(&"g") => {
                    if fields.len() != 4 {
                        return Err(bad(line));
                    }
                    let id: u64 = fields[1].parse().map_err(|_| bad(line))?;
                    let h: i64 = fields[2]
                        .strip_prefix("h=")
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad(line))?;
                    let q: i64 = fields[3]
                        .strip_prefix("q=")
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad(line))?;
                    if gens.contains_key(&id) {
                        return Err(bad(line));
                    }
                    let idx = cx.add_generator(h, q);
                    gens.insert(id, (h, idx));
                }
                Some(&"d") => {
                    if fields.len() != 4 {
                        return Err(bad(line));
                    }
                    let from: u64 = fields[1].parse().map_err(|_| bad(line))?;
                    let to: u64 = fields[2].parse().map_err(|_| bad(line))?;
                    let coeff: BigInt = fields[3].parse().map_err(|_| bad(line))?;
                    let &(hf, gf) = gens.get(&from).ok_or_else(|| bad(line))?;
                    let &(ht, gt) = gens.get(&to).ok_or_else(|| bad(line))?;
                    if ht != hf + 1 {
                        return Err(bad(line));
                    }
                    if cx.q_of(ht, gt) < cx.q_of(hf, gf) {
                        return Err(bad(line));
                    }
                    cx.add_entry(hf, gf, gt, coeff);
                }
                _ => return Err(bad(line)),
            }
        }
        Ok(cx)
    }
}

// --- Field machinery ---

fn field_rank<R: Field>(ring: &R, mut m: Vec<Vec<R::Elem>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let Some(p) = (rank..rows).find(|&i| !ring.is_zero(&m[i][col])) else {
            col += 1;
            continue;
        };
        m.swap(rank, p);
        let inv = ring.inv(&m[rank][col]);
        for i in rank + 1..rows {
            if ring.is_zero(&m[i][col]) {
                continue;
            }
            let f = ring.mul(&m[i][col], &inv);
            for j in col..cols {
                let sub = ring.mul(&f, &m[rank][j]);
                m[i][j] = ring.sub(&m[i][j], &sub);
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

fn field_kernel<R: Field>(ring: &R, m: &[Vec<R::Elem>], cols: usize) -> Vec<Vec<R::Elem>> {
    // Row-reduce, then read kernel vectors off the free columns.
    let mut a: Vec<Vec<R::Elem>> = m.to_vec();
    let rows = a.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !ring.is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(rank, p);
        let inv = ring.inv(&a[rank][col]);
        for j in col..cols {
            a[rank][j] = ring.mul(&a[rank][j], &inv);
        }
        for i in 0..rows {
            if i == rank || ring.is_zero(&a[i][col]) {
                continue;
            }
            let f = a[i][col].clone();
            for j in col..cols {
                let sub = ring.mul(&f, &a[rank][j]);
                a[i][j] = ring.sub(&a[i][j], &sub);
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    let mut basis = Vec::new();
    for col in 0..cols {
        if pivot_of_col[col].is_some() {
            continue;
        }
        let mut v = vec![ring.zero(); cols];
        v[col] = ring.one();
        for (c, piv) in pivot_of_col.iter().enumerate() {
            if let Some(r) = piv {
                v[c] = ring.neg(&a[*r][col]);
            }
        }
        basis.push(v);
    }
    basis
}

impl<R: Field> FilteredComplex<R> {
    /// Dimensions of A_q = im(H^h(F_q) → H^h) for each q level, descending.
    pub fn graded_image_dims(&self, h: i64) -> Vec<(i64, usize)> {
        let gens = self.generators(h);
        if gens.is_empty() {
            return Vec::new();
        }
        let dim = gens.len();
        let (d_out, cols, _) = self.dense_block(h);
        let (d_in, in_cols, _) = self.dense_block(h - 1);
        let b: Vec<Vec<R::Elem>> = (0..in_cols.len())
            .map(|j| d_in.iter().map(|row| row[j].clone()).collect())
            .collect();
        let rank_b = field_rank(
            &self.ring,
            (0..dim)
                .map(|i| b.iter().map(|v| v[i].clone()).collect())
                .collect::<Vec<_>>(),
        );
        let qmax = gens.iter().map(|&(_, q)| q).max().unwrap();
        let qmin = gens.iter().map(|&(_, q)| q).min().unwrap();
        let mut out = Vec::new();
        let mut level = qmax;
        while level >= qmin {
            let sel: Vec<usize> = (0..dim)
                .filter(|&j| self.q_of(h, cols[j]) >= level)
                .collect();
            let sub: Vec<Vec<R::Elem>> = d_out
                .iter()
                .map(|row| sel.iter().map(|&j| row[j].clone()).collect())
                .collect();
            let ker = field_kernel(&self.ring, &sub, sel.len());
            // dim A_q = rank([K_q | B]) - rank(B).
            let mut rows: Vec<Vec<R::Elem>> = Vec::new();
            for k in &ker {
                let mut v = vec![self.ring.zero(); dim];
                for (t, &j) in sel.iter().enumerate() {
                    v[j] = k[t].clone();
                }
                rows.push(v);
            }
            for v in &b {
                rows.push(v.clone());
            }
            let dim_aq = field_rank(&self.ring, rows) - rank_b;
            out.push((level, dim_aq));
            level -= 2;
        }
        out
    }

    /// Dimensions of the homology of the q-preserving part per (h, q).
    pub fn field_homology_table(&self) -> BTreeMap<(i64, i64), usize> {
        let mut kh = self.khovanov_part();
        kh.gauss_reduce();
        let mut table = BTreeMap::new();
        for h in kh.h_min()..=kh.h_max() {
            let gens = kh.generators(h);
            let qs: std::collections::BTreeSet<i64> = gens.iter().map(|&(_, q)| q).collect();
            for &q in &qs {
                let n = gens.iter().filter(|&&(_, gq)| gq == q).count();
                let r_out = kh.field_block_rank(h, q);
                let r_in = kh.field_block_rank(h - 1, q);
                let dim = n - r_out - r_in;
                if dim > 0 {
                    table.insert((h, q), dim);
                }
            }
        }
        table
    }

    fn field_block_rank(&self, h: i64, q: i64) -> usize {
        let cols: Vec<u32> = self
            .generators(h)
            .into_iter()
            .filter(|&(_, gq)| gq == q)
            .map(|(i, _)| i)
            .collect();
        let rows: Vec<u32> = self
            .generators(h + 1)
            .into_iter()
            .filter(|&(_, gq)| gq == q)
            .map(|(i, _)| i)
            .collect();
        if cols.is_empty() || rows.is_empty() {
            return 0;
        }
        let rpos: HashMap<u32, usize> = rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut m = vec![vec![self.ring.zero(); cols.len()]; rows.len()];
        let d = self.deg(h).unwrap();
        for (j, &ci) in cols.iter().enumerate() {
            for (&t, c) in &d.out[ci as usize] {
                if let Some(&r) = rpos.get(&t) {
                    m[r][j] = c.clone();
                }
            }
        }
        field_rank(&self.ring, m)
    }
}
