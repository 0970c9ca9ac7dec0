//! Independent oracles for the integration tests. Nothing here calls into the
//! library's homology or zigzag code; complexes are only read as simplex lists.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use temporal_zigzag::complex::{associated_asc, Simplex, SimplicialComplex, SizeCap};
use temporal_zigzag::hypergraph::{RawEdge, TemporalHypergraph};
use temporal_zigzag::windows::{make_windows, snapshot_sequence};
use temporal_zigzag::zigzag::{interleave, InterleaveMode, ZigzagFiltration};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random temporal hypergraph: up to `max_vertices` vertices, up to
/// `max_edges` edges, each with one to three intervals inside `[0, horizon]`.
pub fn random_raw_edges(seed: u64, max_vertices: usize, max_edges: usize, horizon: f64) -> Vec<RawEdge> {
    let mut r = rng(seed);
    let n_vertices = r.gen_range(2..=max_vertices);
    let n_edges = r.gen_range(1..=max_edges);
    let names: Vec<String> = (0..n_vertices).map(|i| format!("v{i}")).collect();
    (0..n_edges)
        .map(|e| {
            let size = r.gen_range(1..=n_vertices.min(5));
            let mut verts = BTreeSet::new();
            while verts.len() < size {
                verts.insert(r.gen_range(0..n_vertices));
            }
            let n_iv = r.gen_range(1..=3);
            let intervals = (0..n_iv)
                .map(|_| {
                    let a = (r.gen_range(0.0..horizon) * 4.0).round() / 4.0;
                    let len = (r.gen_range(0.0..horizon / 3.0) * 4.0).round() / 4.0;
                    (a, (a + len).min(horizon))
                })
                .collect();
            RawEdge {
                id: format!("e{e}"),
                vertices: verts.into_iter().map(|i| names[i].clone()).collect(),
                intervals,
            }
        })
        .collect()
}

/// Window width and shift giving at most `max_windows` windows over `[0, horizon]`.
pub fn random_window(r: &mut ChaCha8Rng, horizon: f64, max_windows: usize) -> (f64, f64) {
    let w = r.gen_range(horizon / 8.0..horizon / 2.0);
    let min_s = ((horizon - w) / (max_windows - 1) as f64).max(horizon / 40.0);
    let s = if min_s >= w { w } else { r.gen_range(min_s..=w) };
    (w, s)
}

/// Windowed snapshot complexes, interleaved.
pub fn filtration(
    raw: &[RawEdge],
    horizon: f64,
    w: f64,
    s: f64,
    mode: InterleaveMode,
    p_max: usize,
) -> ZigzagFiltration {
    let thg = TemporalHypergraph::build(raw).expect("valid hypergraph");
    let windows = make_windows(0.0, horizon, w, s).expect("valid windows");
    let seq = snapshot_sequence(&thg, &windows);
    let complexes: Vec<SimplicialComplex> = seq
        .snapshots
        .iter()
        .map(|h| associated_asc(h, SizeCap::for_homology(p_max)).unwrap())
        .collect();
    interleave(&complexes, &seq.mids(), mode).expect("interleave")
}

pub fn toy_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/toy.json")
}

// ---- dense GF(2) vectors ----

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn zeros(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut b = Bits::zeros(n);
        b.flip(i);
        b
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    pub fn leading(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&i| self.get(i)).collect()
    }
}

/// Gaussian elimination that remembers which generators built each row.
pub struct Echelon {
    width: usize,
    generators: usize,
    rows: Vec<(usize, Bits, Bits)>,
}

impl Echelon {
    pub fn new(width: usize, generators: usize) -> Self {
        Echelon { width, generators, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v`; returns the residual and the generator combination removed.
    pub fn reduce(&self, v: &Bits) -> (Bits, Bits) {
        let mut v = v.clone();
        let mut combo = Bits::zeros(self.generators);
        for (pivot, row, c) in &self.rows {
            if v.get(*pivot) {
                v.xor(row);
                combo.xor(c);
            }
        }
        (v, combo)
    }

    /// Adds generator `g` with value `v`. Returns the dependency among
    /// generators when `v` is already in the span.
    pub fn push(&mut self, g: usize, v: &Bits) -> Option<Bits> {
        let (res, mut combo) = self.reduce(v);
        combo.flip(g);
        match res.leading() {
            None => Some(combo),
            Some(pivot) => {
                for (_, row, c) in self.rows.iter_mut() {
                    if row.get(pivot) {
                        row.xor(&res);
                        c.xor(&combo);
                    }
                }
                self.rows.push((pivot, res, combo));
                None
            }
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }
}

pub fn dense_rank(vectors: &[Bits], width: usize) -> usize {
    let mut e = Echelon::new(width, vectors.len());
    for (g, v) in vectors.iter().enumerate() {
        e.push(g, v);
    }
    e.rank()
}

/// Kernel basis of the linear map sending unit vector `j` to `images[j]`.
pub fn kernel(images: &[Bits], width: usize) -> Vec<Bits> {
    let mut e = Echelon::new(width, images.len());
    images.iter().enumerate().filter_map(|(g, v)| e.push(g, v)).collect()
}

// ---- chain complexes over a fixed simplex universe ----

fn faces(s: &Simplex) -> Vec<Simplex> {
    let v = s.vertices();
    (0..v.len())
        .map(|i| {
            let mut rest = v.to_vec();
            rest.remove(i);
            Simplex::new(rest).expect("non-empty face")
        })
        .collect()
}

/// All simplices of the given complexes in dimensions `p` and `p + 1`, with
/// one index space per dimension.
pub struct Universe {
    pub p: usize,
    pub lower: Vec<Simplex>,
    pub upper: Vec<Simplex>,
    lower_index: HashMap<Simplex, usize>,
}

impl Universe {
    pub fn new(complexes: &[&SimplicialComplex], p: usize) -> Self {
        let mut lower = BTreeSet::new();
        let mut upper = BTreeSet::new();
        for k in complexes {
            for s in k.iter() {
                if s.len() == p + 1 {
                    lower.insert(s.clone());
                } else if s.len() == p + 2 {
                    upper.insert(s.clone());
                }
            }
        }
        let lower: Vec<Simplex> = lower.into_iter().collect();
        let upper: Vec<Simplex> = upper.into_iter().collect();
        let lower_index = lower.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Universe { p, lower, upper, lower_index }
    }

    fn boundary_of_lower(&self, s: &Simplex) -> Option<Vec<Simplex>> {
        (self.p > 0).then(|| faces(s))
    }

    /// Homology of `k` in dimension `p` with cycle representatives.
    pub fn homology(&self, k: &SimplicialComplex) -> Homology {
        let n = self.lower.len();
        let present: Vec<usize> = (0..n).filter(|&i| k.contains(&self.lower[i])).collect();
        // cycles: kernel of the boundary restricted to present p-simplices
        let cycles: Vec<Bits> = if self.p == 0 {
            present.iter().map(|&i| Bits::unit(n, i)).collect()
        } else {
            let mut face_ids: BTreeMap<Simplex, usize> = BTreeMap::new();
            let images: Vec<Vec<Simplex>> =
                present.iter().map(|&i| self.boundary_of_lower(&self.lower[i]).unwrap()).collect();
            for fs in &images {
                for f in fs {
                    let next = face_ids.len();
                    face_ids.entry(f.clone()).or_insert(next);
                }
            }
            let m = face_ids.len();
            let cols: Vec<Bits> = images
                .iter()
                .map(|fs| {
                    let mut b = Bits::zeros(m);
                    for f in fs {
                        b.flip(face_ids[f]);
                    }
                    b
                })
                .collect();
            kernel(&cols, m)
                .into_iter()
                .map(|combo| {
                    let mut z = Bits::zeros(n);
                    for j in combo.ones(present.len()) {
                        z.flip(present[j]);
                    }
                    z
                })
                .collect()
        };
        let boundaries: Vec<Bits> = self
            .upper
            .iter()
            .filter(|s| k.contains(s))
            .map(|s| {
                let mut b = Bits::zeros(n);
                for f in faces(s) {
                    b.flip(self.lower_index[&f]);
                }
                b
            })
            .collect();
        let mut b_ech = Echelon::new(n, boundaries.len());
        for (g, b) in boundaries.iter().enumerate() {
            b_ech.push(g, b);
        }
        let b_rank = b_ech.rank();
        let mut span = Echelon::new(n, 0);
        let mut basis_b = Vec::new();
        for b in &boundaries {
            if span.push(0, b).is_none() {
                basis_b.push(b.clone());
            }
        }
        let mut reps = Vec::new();
        for z in &cycles {
            if span.push(0, z).is_none() {
                reps.push(z.clone());
            }
        }
        let mut coords = Echelon::new(n, b_rank + reps.len());
        for (g, v) in basis_b.iter().chain(&reps).enumerate() {
            coords.push(g, v);
        }
        Homology { n, b_rank, reps, coords }
    }
}

pub struct Homology {
    n: usize,
    b_rank: usize,
    pub reps: Vec<Bits>,
    coords: Echelon,
}

impl Homology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of cycle `z` in the representative basis.
    pub fn coordinates(&self, z: &Bits) -> Bits {
        let (res, combo) = self.coords.reduce(z);
        assert!(res.is_zero(), "not a cycle of this complex");
        let mut out = Bits::zeros(self.dim());
        for i in 0..self.dim() {
            if combo.get(self.b_rank + i) {
                out.flip(i);
            }
        }
        out
    }

    pub fn width(&self) -> usize {
        self.n
    }
}

/// Betti number from dense ranks: `n_p - rank ∂_p - rank ∂_{p+1}`.
pub fn oracle_betti(k: &SimplicialComplex, p: usize) -> usize {
    Universe::new(&[k], p).homology(k).dim()
}

/// Rank of `H_p(sub) -> H_p(sup)`.
pub fn oracle_induced_rank(sub: &SimplicialComplex, sup: &SimplicialComplex, p: usize) -> usize {
    let u = Universe::new(&[sub, sup], p);
    let hs = u.homology(sub);
    let ht = u.homology(sup);
    let images: Vec<Bits> = hs.reps.iter().map(|z| ht.coordinates(z)).collect();
    dense_rank(&images, ht.dim())
}

/// Full zigzag barcode of a sequence of complexes joined by inclusions in
/// either direction, from ranks of limit-to-colimit maps. Bars are returned
/// as half-open `(birth, death)` position ranges.
pub fn oracle_zigzag_barcode(complexes: &[SimplicialComplex], p: usize) -> Vec<(usize, usize)> {
    let refs: Vec<&SimplicialComplex> = complexes.iter().collect();
    let u = Universe::new(&refs, p);
    let hom: Vec<Homology> = complexes.iter().map(|k| u.homology(k)).collect();
    // maps[q]: (forward?, matrix columns) for the arrow between q and q+1
    let maps: Vec<(bool, Vec<Bits>)> = (0..complexes.len().saturating_sub(1))
        .map(|q| {
            let (a, b) = (&complexes[q], &complexes[q + 1]);
            if a.is_subcomplex_of(b) {
                (true, hom[q].reps.iter().map(|z| hom[q + 1].coordinates(z)).collect())
            } else {
                assert!(b.is_subcomplex_of(a), "adjacent complexes are not nested");
                (false, hom[q + 1].reps.iter().map(|z| hom[q].coordinates(z)).collect())
            }
        })
        .collect();
    let n = complexes.len();
    let covering = |s: usize, t: usize| lim_colim_rank(&hom, &maps, s, t);
    let mut memo: HashMap<(usize, usize), usize> = HashMap::new();
    let mut cov = |s: isize, t: usize| -> usize {
        if s < 0 || t >= n {
            return 0;
        }
        *memo.entry((s as usize, t)).or_insert_with(|| covering(s as usize, t))
    };
    let mut bars = Vec::new();
    for s in 0..n {
        for t in s..n {
            let si = s as isize;
            let count = cov(si, t) + cov(si - 1, t + 1);
            let minus = cov(si - 1, t) + cov(si, t + 1);
            assert!(count >= minus);
            for _ in 0..count - minus {
                bars.push((s, t + 1));
            }
        }
    }
    bars.sort();
    bars
}

fn lim_colim_rank(hom: &[Homology], maps: &[(bool, Vec<Bits>)], s: usize, t: usize) -> usize {
    let offsets: Vec<usize> = hom[s..=t]
        .iter()
        .scan(0, |acc, h| {
            let o = *acc;
            *acc += h.dim();
            Some(o)
        })
        .collect();
    let total: usize = hom[s..=t].iter().map(Homology::dim).sum();
    if total == 0 {
        return 0;
    }
    let block = |q: usize| offsets[q - s];
    // Constraints for each arrow, stacked: rows indexed by the target block.
    let eq_offsets: Vec<usize> = (s..t)
        .scan(0, |acc, q| {
            let o = *acc;
            let (fwd, _) = &maps[q];
            *acc += if *fwd { hom[q + 1].dim() } else { hom[q].dim() };
            Some(o)
        })
        .collect();
    let eq_width: usize = (s..t).map(|q| if maps[q].0 { hom[q + 1].dim() } else { hom[q].dim() }).sum();
    let mut images = vec![Bits::zeros(eq_width); total];
    for q in s..t {
        let (fwd, m) = &maps[q];
        let eo = eq_offsets[q - s];
        let (src, tgt) = if *fwd { (q, q + 1) } else { (q + 1, q) };
        for (j, col) in m.iter().enumerate() {
            for i in col.ones(hom[tgt].dim()) {
                images[block(src) + j].flip(eo + i);
            }
        }
        for i in 0..hom[tgt].dim() {
            images[block(tgt) + i].flip(eo + i);
        }
    }
    let lim = kernel(&images, eq_width.max(1));
    // relations of the colimit: e_src(v) - e_tgt(map v)
    let mut rels = Vec::new();
    for q in s..t {
        let (fwd, m) = &maps[q];
        let (src, tgt) = if *fwd { (q, q + 1) } else { (q + 1, q) };
        for (j, col) in m.iter().enumerate() {
            let mut r = Bits::unit(total, block(src) + j);
            for i in col.ones(hom[tgt].dim()) {
                r.flip(block(tgt) + i);
            }
            rels.push(r);
        }
    }
    let base = dense_rank(&rels, total);
    let mut all = rels;
    for x in lim {
        let mut v = Bits::zeros(total);
        for i in 0..hom[s].dim() {
            if x.get(block(s) + i) {
                v.flip(block(s) + i);
            }
        }
        all.push(v);
    }
    dense_rank(&all, total) - base
}

/// Classic persistence of a nested sequence `complexes[0] ⊆ complexes[1] ⊆ ...`
/// by column reduction over a simplex-wise order. Bars are half-open
/// `(birth, death)` position ranges; open bars end at `complexes.len()`.
pub fn classic_barcode(complexes: &[SimplicialComplex], p_max: usize) -> BTreeMap<usize, Vec<(usize, usize)>> {
    let mut entry: BTreeMap<Simplex, usize> = BTreeMap::new();
    for (q, k) in complexes.iter().enumerate() {
        for s in k.iter() {
            entry.entry(s.clone()).or_insert(q);
        }
    }
    let mut order: Vec<(usize, Simplex)> = entry.iter().map(|(s, q)| (*q, s.clone())).collect();
    order.sort_by(|a, b| (a.0, a.1.len(), &a.1).cmp(&(b.0, b.1.len(), &b.1)));
    let idx: HashMap<Simplex, usize> = order.iter().enumerate().map(|(i, (_, s))| (s.clone(), i)).collect();
    let mut columns: Vec<BTreeSet<usize>> = order
        .iter()
        .map(|(_, s)| if s.len() > 1 { faces(s).iter().map(|f| idx[f]).collect() } else { BTreeSet::new() })
        .collect();
    let mut low_owner: HashMap<usize, usize> = HashMap::new();
    let mut killed = vec![false; order.len()];
    let mut bars: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for j in 0..order.len() {
        while let Some(&low) = columns[j].iter().next_back() {
            match low_owner.get(&low) {
                Some(&k) => {
                    let other = columns[k].clone();
                    columns[j] = columns[j].symmetric_difference(&other).copied().collect();
                }
                None => break,
            }
        }
        if let Some(&low) = columns[j].iter().next_back() {
            low_owner.insert(low, j);
            killed[low] = true;
            let dim = order[low].1.len() - 1;
            let (b, d) = (order[low].0, order[j].0);
            if b < d && dim <= p_max {
                bars.entry(dim).or_default().push((b, d));
            }
        }
    }
    for (i, (q, s)) in order.iter().enumerate() {
        let dim = s.len() - 1;
        if !killed[i] && columns[i].is_empty() && dim <= p_max {
            bars.entry(dim).or_default().push((*q, complexes.len()));
        }
    }
    for v in bars.values_mut() {
        v.sort();
    }
    bars
}

/// Connected components of the 1-skeleton by union-find.
pub fn components(k: &SimplicialComplex) -> usize {
    let verts: Vec<&Simplex> = k.of_dimension(0).collect();
    let id: HashMap<&Simplex, usize> = verts.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let mut count = verts.len();
    for e in k.of_dimension(1) {
        let ends: Vec<usize> = faces(e).iter().map(|f| id[f]).collect();
        let (a, b) = (find(&mut parent, ends[0]), find(&mut parent, ends[1]));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Minimal XML well-formedness check: prolog, balanced tags, quoted
/// attributes, known entities.
pub fn check_xml(doc: &str) -> Result<(), String> {
    let mut rest = doc.trim_start();
    if let Some(r) = rest.strip_prefix("<?xml") {
        let end = r.find("?>").ok_or("unterminated prolog")?;
        rest = &r[end + 2..];
    }
    let mut stack: Vec<String> = Vec::new();
    let mut seen_root = false;
    while !rest.is_empty() {
        if let Some(lt) = rest.find('<') {
            check_text(&rest[..lt])?;
            if lt > 0 && stack.is_empty() && !rest[..lt].trim().is_empty() {
                return Err("text outside the root element".into());
            }
            rest = &rest[lt..];
        } else {
            if !rest.trim().is_empty() {
                return Err("trailing text".into());
            }
            break;
        }
        if let Some(r) = rest.strip_prefix("<!--") {
            let end = r.find("-->").ok_or("unterminated comment")?;
            rest = &r[end + 3..];
            continue;
        }
        let gt = rest.find('>').ok_or("unterminated tag")?;
        let tag = &rest[1..gt];
        rest = &rest[gt + 1..];
        if let Some(name) = tag.strip_prefix('/') {
            let open = stack.pop().ok_or("close without open")?;
            if open != name.trim() {
                return Err(format!("mismatched </{name}> for <{open}>"));
            }
            continue;
        }
        let self_closing = tag.ends_with('/');
        let body = tag.trim_end_matches('/');
        let name_end = body.find(char::is_whitespace).unwrap_or(body.len());
        let name = &body[..name_end];
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || "-_:.".contains(c)) {
            return Err(format!("bad element name {name:?}"));
        }
        check_attributes(&body[name_end..])?;
        if stack.is_empty() {
            if seen_root {
                return Err("multiple root elements".into());
            }
            seen_root = true;
        }
        if !self_closing {
            stack.push(name.to_string());
        }
    }
    if !stack.is_empty() {
        return Err(format!("unclosed elements {stack:?}"));
    }
    if !seen_root {
        return Err("no root element".into());
    }
    Ok(())
}

fn check_text(text: &str) -> Result<(), String> {
    let mut rest = text;
    while let Some(amp) = rest.find('&') {
        let semi = rest[amp..].find(';').ok_or("unterminated entity")?;
        let ent = &rest[amp + 1..amp + semi];
        if !matches!(ent, "amp" | "lt" | "gt" | "quot" | "apos") && !ent.starts_with('#') {
            return Err(format!("unknown entity &{ent};"));
        }
        rest = &rest[amp + semi + 1..];
    }
    Ok(())
}

fn check_attributes(s: &str) -> Result<(), String> {
    let mut rest = s.trim();
    let mut names = BTreeSet::new();
    while !rest.is_empty() {
        let eq = rest.find('=').ok_or_else(|| format!("attribute without value in {s:?}"))?;
        let name = rest[..eq].trim();
        if name.is_empty() || !names.insert(name.to_string()) {
            return Err(format!("bad or duplicate attribute {name:?}"));
        }
        let after = rest[eq + 1..].trim_start();
        let quote = after.chars().next().ok_or("missing attribute value")?;
        if quote != '"' && quote != '\'' {
            return Err("unquoted attribute".into());
        }
        let close = after[1..].find(quote).ok_or("unterminated attribute")?;
        let value = &after[1..1 + close];
        if value.contains('<') {
            return Err("< in attribute value".into());
        }
        check_text(value)?;
        rest = after[close + 2..].trim_start();
    }
    Ok(())
}
