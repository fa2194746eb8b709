//! Reduced alternating 4-plat diagrams from positive continued fractions:
//! all-A-state circle counts, crossing signs, and the diagram route to the
//! signature.
//!
//! A diagram is a list of crossings, each with four slots in the plane
//! positions NW/NE/SW/SE and a marked over-diagonal, together with arcs
//! joining slots (virtual degree-2 nodes thread the plat closure through).
//! Twist regions are laid out in the standard rational-tangle form:
//! odd-indexed terms of the continued fraction are horizontal regions, even
//! ones vertical, applied innermost first, and the tangle is closed by the
//! numerator closure.

use num_traits::Signed as _;

use crate::error::Error;
use crate::rational::{Cf, Convention, Fraction};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corner {
    Nw,
    Ne,
    Sw,
    Se,
}

impl Corner {
    fn opposite(self) -> Corner {
        match self {
            Corner::Nw => Corner::Se,
            Corner::Se => Corner::Nw,
            Corner::Ne => Corner::Sw,
            Corner::Sw => Corner::Ne,
        }
    }

    fn index(self) -> usize {
        match self {
            Corner::Nw => 0,
            Corner::Ne => 1,
            Corner::Sw => 2,
            Corner::Se => 3,
        }
    }

    /// Plane coordinates with x to the east and y to the north.
    fn coords(self) -> (i64, i64) {
        match self {
            Corner::Nw => (-1, 1),
            Corner::Ne => (1, 1),
            Corner::Sw => (-1, -1),
            Corner::Se => (1, -1),
        }
    }
}

/// Which diagonal carries the over-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diag {
    NwSe,
    NeSw,
}

impl Diag {
    fn flipped(self) -> Diag {
        match self {
            Diag::NwSe => Diag::NeSw,
            Diag::NeSw => Diag::NwSe,
        }
    }

    fn of(corner: Corner) -> Diag {
        match corner {
            Corner::Nw | Corner::Se => Diag::NwSe,
            Corner::Ne | Corner::Sw => Diag::NeSw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Port {
    Slot(usize, Corner),
    Virtual(usize),
}

/// Crossing handedness per twist-region position, for positive terms;
/// negative terms flip the diagonal.  Pinned by the o(D)/y(D) counts and
/// the signature fixtures of the three template families.
const H_OVER_POS: Diag = Diag::NwSe;
const V_OVER_POS: Diag = Diag::NwSe;

#[derive(Debug, Clone)]
pub struct PlatDiagram {
    over: Vec<Diag>,
    arcs: Vec<(Port, Port)>,
    n_virtual: usize,
    /// Per crossing and per diagonal: the traversal's (component id,
    /// heads-towards corner), indexed [NwSe, NeSw].
    passages: Vec<[(usize, Corner); 2]>,
    component_count: usize,
}

struct Builder {
    over: Vec<Diag>,
    arcs: Vec<(Port, Port)>,
    n_virtual: usize,
    nw: Port,
    ne: Port,
    sw: Port,
    se: Port,
}

impl Builder {
    /// 0-tangle (two horizontal strands) or the infinity tangle (vertical).
    fn new(start_horizontal: bool) -> Builder {
        let v = Port::Virtual;
        let arcs = if start_horizontal {
            vec![(v(0), v(1)), (v(2), v(3))]
        } else {
            vec![(v(0), v(2)), (v(1), v(3))]
        };
        Builder {
            over: Vec::new(),
            arcs,
            n_virtual: 4,
            nw: v(0),
            ne: v(1),
            sw: v(2),
            se: v(3),
        }
    }

    fn add_horizontal(&mut self, over: Diag) {
        let c = self.over.len();
        self.over.push(over);
        self.arcs.push((self.ne, Port::Slot(c, Corner::Nw)));
        self.arcs.push((self.se, Port::Slot(c, Corner::Sw)));
        self.ne = Port::Slot(c, Corner::Ne);
        self.se = Port::Slot(c, Corner::Se);
    }

    fn add_vertical(&mut self, over: Diag) {
        let c = self.over.len();
        self.over.push(over);
        self.arcs.push((self.sw, Port::Slot(c, Corner::Nw)));
        self.arcs.push((self.se, Port::Slot(c, Corner::Ne)));
        self.sw = Port::Slot(c, Corner::Sw);
        self.se = Port::Slot(c, Corner::Se);
    }

    fn close_numerator(mut self) -> PlatDiagram {
        self.arcs.push((self.nw, self.ne));
        self.arcs.push((self.sw, self.se));
        PlatDiagram::finish(self.over, self.arcs, self.n_virtual)
    }
}

/// Twist sequence of a continued fraction: innermost region first, with
/// odd positions horizontal.  Returns (horizontal?, signed count) pairs.
pub(crate) fn build_tangle_ops(cf: &Cf) -> Vec<(bool, i64)> {
    let terms = cf.terms();
    (0..terms.len()).rev().map(|i| ((i + 1) % 2 == 1, terms[i])).collect()
}

/// Build the 4-plat closure of a continued fraction.
///
/// Positive terms give the standard reduced alternating diagram; mixed
/// signs are allowed and flip the crossing handedness region by region.
pub fn build_plat(cf: &Cf) -> Result<PlatDiagram> {
    let ops = build_tangle_ops(cf);
    let mut b = Builder::new(ops.first().map(|&(h, _)| h).unwrap_or(true));
    for (horizontal, count) in ops {
        if count == 0 {
            return Err(Error::InvalidCf("zero twist count".into()));
        }
        for _ in 0..count.abs() {
            if horizontal {
                let over = if count > 0 { H_OVER_POS } else { H_OVER_POS.flipped() };
                b.add_horizontal(over);
            } else {
                let over = if count > 0 { V_OVER_POS } else { V_OVER_POS.flipped() };
                b.add_vertical(over);
            }
        }
    }
    Ok(b.close_numerator())
}

impl PlatDiagram {
    fn finish(over: Vec<Diag>, arcs: Vec<(Port, Port)>, n_virtual: usize) -> PlatDiagram {
        let mut d = PlatDiagram {
            over,
            arcs,
            n_virtual,
            passages: Vec::new(),
            component_count: 0,
        };
        d.traverse();
        d
    }

    fn port_id(&self, p: Port) -> usize {
        match p {
            Port::Slot(c, corner) => 4 * c + corner.index(),
            Port::Virtual(v) => 4 * self.over.len() + v,
        }
    }

    fn id_to_port(&self, id: usize) -> Port {
        let nc = self.over.len();
        if id < 4 * nc {
            let corner = match id % 4 {
                0 => Corner::Nw,
                1 => Corner::Ne,
                2 => Corner::Sw,
                _ => Corner::Se,
            };
            Port::Slot(id / 4, corner)
        } else {
            Port::Virtual(id - 4 * nc)
        }
    }

    fn port_count(&self) -> usize {
        4 * self.over.len() + self.n_virtual
    }

    /// Arc adjacency: slots carry one arc end, virtual nodes two.
    fn arc_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.port_count()];
        for &(a, b) in &self.arcs {
            let (ia, ib) = (self.port_id(a), self.port_id(b));
            adj[ia].push(ib);
            adj[ib].push(ia);
        }
        adj
    }

    /// Follow the arc leaving `(c, exit)` through any virtual nodes to the
    /// next crossing entry.
    fn next_entry(
        &self,
        adj: &[Vec<usize>],
        c: usize,
        exit: Corner,
    ) -> (usize, Corner) {
        let mut prev = self.port_id(Port::Slot(c, exit));
        let mut cur = adj[prev][0];
        loop {
            match self.id_to_port(cur) {
                Port::Slot(c2, corner2) => return (c2, corner2),
                Port::Virtual(_) => {
                    let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                    prev = cur;
                    cur = next;
                }
            }
        }
    }

    /// Walk every strand once, fixing an orientation per component and
    /// recording the direction each diagonal of each crossing is traversed.
    fn traverse(&mut self) {
        let nc = self.over.len();
        let adj = self.arc_adjacency();
        let dummy = (usize::MAX, Corner::Nw);
        let mut passages = vec![[dummy; 2]; nc];
        let mut seen = vec![[false; 2]; nc];
        let mut components = 0usize;

        for start_c in 0..nc {
            for start_corner in [Corner::Nw, Corner::Ne] {
                if seen[start_c][diag_slot(Diag::of(start_corner))] {
                    continue;
                }
                let comp = components;
                components += 1;
                let mut c = start_c;
                let mut corner = start_corner;
                loop {
                    let exit = corner.opposite();
                    let slot = diag_slot(Diag::of(corner));
                    seen[c][slot] = true;
                    passages[c][slot] = (comp, exit);
                    let (c2, corner2) = self.next_entry(&adj, c, exit);
                    c = c2;
                    corner = corner2;
                    if c == start_c && corner == start_corner {
                        break;
                    }
                }
            }
        }

        self.passages = passages;
        self.component_count = components;
    }

    pub fn crossing_count(&self) -> usize {
        self.over.len()
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    /// Sign of one crossing, with selected component orientations reversed.
    fn crossing_sign_with(&self, c: usize, flip: &[bool]) -> i64 {
        let (over_slot, under_slot) = match self.over[c] {
            Diag::NwSe => (0, 1),
            Diag::NeSw => (1, 0),
        };
        let dir = |(comp, head): (usize, Corner)| {
            let (x, y) = head.coords();
            if flip.get(comp).copied().unwrap_or(false) {
                (-x, -y)
            } else {
                (x, y)
            }
        };
        let (ox, oy) = dir(self.passages[c][over_slot]);
        let (ux, uy) = dir(self.passages[c][under_slot]);
        if ox * uy - oy * ux > 0 {
            1
        } else {
            -1
        }
    }

    pub(crate) fn crossing_sign(&self, c: usize) -> i64 {
        self.crossing_sign_with(c, &[])
    }

    /// Count of positive crossings; requires a single component.
    pub fn positive_crossings(&self) -> Result<i64> {
        if self.component_count != 1 {
            return Err(Error::MultiComponent(self.component_count));
        }
        Ok((0..self.over.len()).filter(|&c| self.crossing_sign(c) > 0).count() as i64)
    }

    /// Writhe of a knot diagram.
    pub fn writhe(&self) -> Result<i64> {
        if self.component_count != 1 {
            return Err(Error::MultiComponent(self.component_count));
        }
        Ok((0..self.over.len()).map(|c| self.crossing_sign(c)).sum())
    }

    /// Writhes over all orientation choices of the components (the first
    /// component keeps the traversal orientation).
    pub fn writhes_all_orientations(&self) -> Vec<i64> {
        let k = self.component_count;
        (0..(1usize << k.saturating_sub(1)))
            .map(|mask| {
                let flip: Vec<bool> =
                    (0..k).map(|i| i > 0 && (mask >> (i - 1)) & 1 == 1).collect();
                (0..self.over.len()).map(|c| self.crossing_sign_with(c, &flip)).sum()
            })
            .collect()
    }

    /// Circle count of the all-A Kauffman state.
    ///
    /// Rotating the over-strand counterclockwise sweeps the two A-regions,
    /// so a NW-SE over-diagonal smooths to NW-NE / SW-SE and a NE-SW one to
    /// NW-SW / NE-SE.
    pub fn all_a_circles(&self) -> usize {
        self.state_circles(&vec![true; self.over.len()])
    }

    /// Circle count of the all-B state.
    pub fn all_b_circles(&self) -> usize {
        self.state_circles(&vec![false; self.over.len()])
    }

    /// Circle count for an arbitrary smoothing assignment (`true` = A).
    pub fn state_circles(&self, choices: &[bool]) -> usize {
        assert_eq!(choices.len(), self.over.len());
        let mut uf = UnionFind::new(self.port_count());
        for &(a, b) in &self.arcs {
            uf.union(self.port_id(a), self.port_id(b));
        }
        for (c, &a_state) in choices.iter().enumerate() {
            for (u, v) in self.smoothing_pairs(c, a_state) {
                uf.union(self.port_id(Port::Slot(c, u)), self.port_id(Port::Slot(c, v)));
            }
        }
        let mut roots: Vec<usize> = (0..self.port_count()).map(|i| uf.find(i)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    fn smoothing_pairs(&self, c: usize, a_state: bool) -> [(Corner, Corner); 2] {
        let horizontal_pairing = match self.over[c] {
            Diag::NwSe => a_state,
            Diag::NeSw => !a_state,
        };
        if horizontal_pairing {
            [(Corner::Nw, Corner::Ne), (Corner::Sw, Corner::Se)]
        } else {
            [(Corner::Nw, Corner::Sw), (Corner::Ne, Corner::Se)]
        }
    }

    /// Signature via o(D) - y(D) - 1, valid on reduced alternating knot
    /// diagrams.
    pub fn signature(&self) -> Result<i64> {
        let o = self.all_a_circles() as i64;
        let y = self.positive_crossings()?;
        Ok(o - y - 1)
    }

    /// True when over and under alternate along every strand.
    pub fn is_alternating(&self) -> bool {
        let nc = self.over.len();
        if nc == 0 {
            return true;
        }
        let adj = self.arc_adjacency();
        let mut seen = vec![[false; 2]; nc];
        for start_c in 0..nc {
            for start_corner in [Corner::Nw, Corner::Ne] {
                if seen[start_c][diag_slot(Diag::of(start_corner))] {
                    continue;
                }
                let mut c = start_c;
                let mut corner = start_corner;
                let mut overs: Vec<bool> = Vec::new();
                loop {
                    let diag = Diag::of(corner);
                    seen[c][diag_slot(diag)] = true;
                    overs.push(diag == self.over[c]);
                    let (c2, corner2) = self.next_entry(&adj, c, corner.opposite());
                    c = c2;
                    corner = corner2;
                    if c == start_c && corner == start_corner {
                        break;
                    }
                }
                for i in 0..overs.len() {
                    if overs[i] == overs[(i + 1) % overs.len()] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// PD-code text lines, one crossing per line.  Segments are numbered
    /// along the traversal orientation; each tuple starts at the incoming
    /// under-strand and lists slots counterclockwise.
    pub fn pd_lines(&self) -> Vec<String> {
        let nc = self.over.len();
        if nc == 0 {
            return Vec::new();
        }
        let adj = self.arc_adjacency();
        let mut seen = vec![[false; 2]; nc];
        let mut seg = vec![[0usize; 4]; nc];
        let mut label = 0usize;
        for start_c in 0..nc {
            for start_corner in [Corner::Nw, Corner::Ne] {
                if seen[start_c][diag_slot(Diag::of(start_corner))] {
                    continue;
                }
                let mut c = start_c;
                let mut corner = start_corner;
                loop {
                    seen[c][diag_slot(Diag::of(corner))] = true;
                    let exit = corner.opposite();
                    label += 1;
                    seg[c][exit.index()] = label;
                    let (c2, corner2) = self.next_entry(&adj, c, exit);
                    c = c2;
                    corner = corner2;
                    seg[c][corner.index()] = label;
                    if c == start_c && corner == start_corner {
                        break;
                    }
                }
            }
        }
        (0..nc)
            .map(|c| {
                let under_slot = match self.over[c] {
                    Diag::NwSe => 1,
                    Diag::NeSw => 0,
                };
                let (_, head) = self.passages[c][under_slot];
                let enter = head.opposite();
                let ring = [Corner::Nw, Corner::Sw, Corner::Se, Corner::Ne];
                let i0 = ring.iter().position(|&x| x == enter).unwrap();
                let labels: Vec<usize> =
                    (0..4).map(|k| seg[c][ring[(i0 + k) % 4].index()]).collect();
                format!("X({},{},{},{})", labels[0], labels[1], labels[2], labels[3])
            })
            .collect()
    }
}

fn diag_slot(d: Diag) -> usize {
    match d {
        Diag::NwSe => 0,
        Diag::NeSw => 1,
    }
}

/// All-positive direct-convention expansion of a fraction v > 1: the
/// subtractive rewrite used to pass from a signed twist description to the
/// reduced alternating diagram.
pub fn positive_cf(v: &Fraction) -> Result<Cf> {
    use num_integer::Integer as _;
    use num_traits::{One, Zero};
    if *v <= Fraction::one() {
        return Err(Error::InvalidInput(format!("{v} <= 1 has no all-positive expansion")));
    }
    let mut num = v.numer().clone();
    let mut den = v.denom().clone();
    let mut terms = Vec::new();
    loop {
        let (q, r) = num.div_mod_floor(&den);
        terms.push(
            i64::try_from(&q)
                .map_err(|_| Error::InvalidInput("term exceeds machine range".into()))?,
        );
        if r.is_zero() {
            break;
        }
        num = den;
        den = r;
    }
    Cf::direct(terms)
}

/// Positive rewrite of a signed continued fraction (same direct value).
pub fn positive_rewrite(cf: &Cf) -> Result<Cf> {
    let v = cf.with_convention(Convention::Direct).eval()?;
    if v.is_negative() {
        return Err(Error::InvalidCf("negative value: rewrite the mirror instead".into()));
    }
    positive_cf(&v)
}

/// Disjoint-set forest with path halving.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}


#[cfg(test)]
mod tests {
    use super::templates::*;
    use super::*;

    fn dcf(terms: &[i64]) -> Cf {
        Cf::direct(terms.to_vec()).unwrap()
    }

    #[test]
    fn template_values_match_family() {
        for (x, y) in [(1i64, 1i64), (2, 1), (3, 2)] {
            assert_eq!(template_pos(x, y).eval().unwrap(), family(x, y).eval().unwrap());
        }
        for (x, y) in [(2, -1), (3, -1), (3, -2), (4, -3)] {
            assert_eq!(template_mid(x, y).eval().unwrap(), family(x, y).eval().unwrap());
        }
        for (x, y) in [(1, -2), (1, -3), (2, -4)] {
            assert_eq!(template_neg(x, y).eval().unwrap(), family(x, y).eval().unwrap());
        }
    }

    #[test]
    fn crossing_counts_and_components() {
        let d = build_plat(&dcf(&[2, 1, 1, 2, 1, 1])).unwrap();
        assert_eq!(d.crossing_count(), 8);
        assert_eq!(d.component_count(), 1);

        let d = build_plat(&dcf(&[3])).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);

        let d = build_plat(&dcf(&[2, 2])).unwrap();
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(d.component_count(), 1);

        // Even numerator: a two-component link.
        let d = build_plat(&dcf(&[4])).unwrap();
        assert_eq!(d.component_count(), 2);
        assert!(matches!(d.positive_crossings(), Err(Error::MultiComponent(2))));
    }

    #[test]
    fn template_counts() {
        for (x, y) in [(1i64, 1i64), (2, 1), (1, 2), (3, 2), (4, 2)] {
            let d = build_plat(&template_pos(x, y)).unwrap();
            assert!(d.is_alternating());
            assert_eq!(d.all_a_circles() as i64, 4 * x + 4 * y - 3, "o at ({x},{y})");
            assert_eq!(d.positive_crossings().unwrap(), 4 * x + 4 * y - 2, "y at ({x},{y})");
            assert_eq!(d.signature().unwrap(), -2);
        }
        for (x, y) in [(2i64, -1i64), (3, -1), (3, -2), (4, -3), (5, -2)] {
            let d = build_plat(&template_mid(x, y)).unwrap();
            assert!(d.is_alternating());
            assert_eq!(d.all_a_circles() as i64, 4 * x + 2 * y, "o at ({x},{y})");
            assert_eq!(d.positive_crossings().unwrap(), 4 * x + 2 * y - 1, "y at ({x},{y})");
            assert_eq!(d.signature().unwrap(), 0);
        }
        for (x, y) in [(1i64, -2i64), (1, -3), (2, -4), (3, -5)] {
            let d = build_plat(&template_neg(x, y)).unwrap();
            assert!(d.is_alternating());
            assert_eq!(d.all_a_circles() as i64, 2 * x + 3, "o at ({x},{y})");
            assert_eq!(d.positive_crossings().unwrap(), 2 * x, "y at ({x},{y})");
            assert_eq!(d.signature().unwrap(), 2);
        }
    }

    #[test]
    fn small_knot_diagrams() {
        // Direct value 3/1: the trefoil chirality with signature -2.
        let d = build_plat(&dcf(&[3])).unwrap();
        assert_eq!(d.signature().unwrap(), -2);
        assert_eq!((d.all_a_circles(), d.positive_crossings().unwrap()), (2, 3));

        // Direct value 3/2: the mirror trefoil.
        let d = build_plat(&dcf(&[1, 2])).unwrap();
        assert_eq!(d.signature().unwrap(), 2);

        // Figure eight.
        let d = build_plat(&dcf(&[2, 2])).unwrap();
        assert_eq!(d.signature().unwrap(), 0);
    }

    #[test]
    fn adequacy_on_templates() {
        for cf in [
            template_pos(1, 1),
            template_pos(3, 2),
            template_mid(2, -1),
            template_mid(4, -3),
            template_neg(1, -3),
            dcf(&[3]),
            dcf(&[2, 2]),
            dcf(&[1, 2]),
        ] {
            let d = build_plat(&cf).unwrap();
            assert_eq!(
                d.all_a_circles() + d.all_b_circles(),
                d.crossing_count() + 2,
                "adequacy fails for {cf}"
            );
        }
    }

    #[test]
    fn pd_lines_shape() {
        let d = build_plat(&dcf(&[3])).unwrap();
        let lines = d.pd_lines();
        assert_eq!(lines.len(), 3);
        for line in &lines {
            assert!(line.starts_with("X("));
        }
    }

    #[test]
    fn positive_cf_examples() {
        use crate::rational::frac;
        assert_eq!(positive_cf(&frac(191, 42)).unwrap().terms(), &[4, 1, 1, 4, 1, 3]);
        assert_eq!(positive_cf(&frac(65, 18)).unwrap().terms(), &[3, 1, 1, 1, 1, 3]);
        assert_eq!(positive_cf(&frac(3, 1)).unwrap().terms(), &[3]);
        assert!(positive_cf(&frac(1, 2)).is_err());
    }

    #[test]
    fn positive_rewrite_matches_templates() {
        // The subtractive rewrite reproduces the template expansions
        // whenever the template does not end in a 1.
        for (x, y) in [(2i64, 1i64), (3, 2), (4, 1)] {
            assert_eq!(positive_rewrite(&family(x, y)).unwrap(), template_pos(x, y));
        }
        for (x, y) in [(2, -1), (3, -2), (4, -3)] {
            assert_eq!(positive_rewrite(&family(x, y)).unwrap(), template_mid(x, y));
        }
        for (x, y) in [(1, -2), (2, -4), (3, -5)] {
            assert_eq!(positive_rewrite(&family(x, y)).unwrap(), template_neg(x, y));
        }
        // Trailing-one templates agree after the tail normalization
        // [..., a, 1] = [..., a + 1].
        let rewritten = positive_rewrite(&family(1, 1)).unwrap();
        assert_eq!(rewritten.terms(), &[2, 1, 1, 2, 2]);
        assert_eq!(rewritten.eval().unwrap(), template_pos(1, 1).eval().unwrap());
    }
}
