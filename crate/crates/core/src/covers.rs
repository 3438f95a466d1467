//! Branched covers of the unit-square torus, given by sheet monodromy.
//!
//! Permutations act on the left: `(p q)(x) = p(q(x))`, and the commutator is
//! `[a, b] = a b a^-1 b^-1`. A cover with horizontal monodromy `a`, vertical
//! monodromy `b` and branch loops `c_1, ..., c_k` must satisfy
//! `[a, b] c_1 ... c_k = id`.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::arith::{GaussRat, Int};
use crate::error::{Error, Result};
use crate::realize::PlanarLattice;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidPermutation);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(d: usize) -> Self {
        Permutation { images: (0..d).collect() }
    }

    /// Product of the given cycles on `d` points.
    pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut p = Permutation::identity(d);
        for cycle in cycles {
            let c = Self::cycle(d, cycle)?;
            p = p.compose(&c)?;
        }
        Ok(p)
    }

    fn cycle(d: usize, points: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..d).collect();
        let mut seen = vec![false; d];
        for (k, &x) in points.iter().enumerate() {
            if x >= d || seen[x] {
                return Err(Error::InvalidPermutation);
            }
            seen[x] = true;
            images[x] = points[(k + 1) % points.len()];
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch);
        }
        Ok(Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn commutator(&self, other: &Permutation) -> Result<Self> {
        self.compose(other)?.compose(&self.inverse())?.compose(&other.inverse())
    }

    /// Cycles including fixed points, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// `q p q^-1`, i.e. the same permutation after renaming sheet `x` to `q(x)`.
    pub fn conjugated(&self, q: &Permutation) -> Result<Self> {
        q.compose(self)?.compose(&q.inverse())
    }
}

fn common_degree(perms: &[&Permutation]) -> Result<usize> {
    let d = perms.first().map(|p| p.degree()).ok_or(Error::InvalidArgument("no permutations"))?;
    if perms.iter().any(|p| p.degree() != d) {
        return Err(Error::DegreeMismatch);
    }
    Ok(d)
}

/// Whether the group generated by `perms` acts transitively.
pub fn is_connected(perms: &[&Permutation]) -> Result<bool> {
    let d = common_degree(perms)?;
    if d == 0 {
        return Ok(false);
    }
    let mut seen = vec![false; d];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for p in perms {
            let y = p.apply(x);
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    Ok(reached == d)
}

/// Square-tiled surface: square `s` has right neighbour `h(s)` and top neighbour `v(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Origami {
    h: Permutation,
    v: Permutation,
}

impl Origami {
    pub fn new(h: Permutation, v: Permutation) -> Result<Self> {
        if h.degree() == 0 {
            return Err(Error::InvalidDegree);
        }
        if !is_connected(&[&h, &v])? {
            return Err(Error::Intransitive);
        }
        Ok(Origami { h, v })
    }

    pub fn degree(&self) -> usize {
        self.h.degree()
    }

    pub fn h(&self) -> &Permutation {
        &self.h
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    /// The same surface as a cover branched over one point.
    pub fn to_cover(&self) -> BranchedTorusCover {
        let c = self.h.commutator(&self.v).expect("equal degrees").inverse();
        BranchedTorusCover { a: self.h.clone(), b: self.v.clone(), branch: vec![c] }
    }
}

pub fn genus_of_origami(o: &Origami) -> usize {
    let d = o.degree();
    let cycles = o.h.commutator(&o.v).expect("equal degrees").cycle_count();
    1 + (d - cycles) / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchedTorusCover {
    a: Permutation,
    b: Permutation,
    branch: Vec<Permutation>,
}

impl BranchedTorusCover {
    pub fn new(a: Permutation, b: Permutation, branch: Vec<Permutation>) -> Result<Self> {
        let d = a.degree();
        if d == 0 {
            return Err(Error::InvalidDegree);
        }
        let mut all: Vec<&Permutation> = vec![&a, &b];
        all.extend(branch.iter());
        common_degree(&all)?;
        let mut product = a.commutator(&b)?;
        for c in &branch {
            product = product.compose(c)?;
        }
        if !product.is_identity() {
            return Err(Error::MonodromyRelationViolated);
        }
        if !is_connected(&all)? {
            return Err(Error::Intransitive);
        }
        Ok(BranchedTorusCover { a, b, branch })
    }

    pub fn degree(&self) -> usize {
        self.a.degree()
    }

    pub fn a(&self) -> &Permutation {
        &self.a
    }

    pub fn b(&self) -> &Permutation {
        &self.b
    }

    pub fn branch(&self) -> &[Permutation] {
        &self.branch
    }

    /// Relabels sheet `x` as `q(x)`.
    pub fn relabeled(&self, q: &Permutation) -> Result<Self> {
        BranchedTorusCover::new(
            self.a.conjugated(q)?,
            self.b.conjugated(q)?,
            self.branch.iter().map(|c| c.conjugated(q)).collect::<Result<_>>()?,
        )
    }
}

/// Riemann–Hurwitz over the torus.
pub fn genus_of_branched_cover(c: &BranchedTorusCover) -> Result<usize> {
    let d = c.degree();
    let ramification: usize = c.branch.iter().map(|p| d - p.cycle_count()).sum();
    if !ramification.is_multiple_of(2) {
        return Err(Error::Internal("odd total ramification"));
    }
    Ok(1 + ramification / 2)
}

/// `a` a `d`-cycle, `b = id`, and `2g - 2` simple branch points with monodromy `(0 1)`.
pub fn construct_cover(genus: usize, degree: usize) -> Result<BranchedTorusCover> {
    if genus < 2 {
        return Err(Error::InvalidGenus(genus));
    }
    if degree == 0 {
        return Err(Error::InvalidDegree);
    }
    if degree == 1 {
        return Err(Error::NoDegreeOneCover);
    }
    let a = Permutation { images: (0..degree).map(|i| (i + 1) % degree).collect() };
    let t = Permutation::from_cycles(degree, &[&[0, 1]])?;
    BranchedTorusCover::new(a, Permutation::identity(degree), vec![t; 2 * genus - 2])
}

/// Subgroup of `Z + Zi` generated by the weights of closed loops in the monodromy graph.
pub fn period_lattice_of_cover(c: &BranchedTorusCover) -> PlanarLattice {
    let d = c.degree();
    let mut edges: Vec<(&Permutation, (i64, i64))> = vec![(&c.a, (1, 0)), (&c.b, (0, 1))];
    edges.extend(c.branch.iter().map(|p| (p, (0, 0))));

    // spanning tree by breadth-first search, recording the weight potential of each sheet
    let mut potential: Vec<Option<(i64, i64)>> = vec![None; d];
    potential[0] = Some((0, 0));
    let mut queue = alloc::collections::VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let (ps, qs) = potential[s].expect("visited");
        for (p, (wx, wy)) in &edges {
            let t = p.apply(s);
            if potential[t].is_none() {
                potential[t] = Some((ps + wx, qs + wy));
                queue.push_back(t);
            }
        }
    }

    let mut generators = Vec::new();
    for s in 0..d {
        let (ps, qs) = potential[s].expect("transitive");
        for (p, (wx, wy)) in &edges {
            let (pt, qt) = potential[p.apply(s)].expect("transitive");
            let (x, y) = (ps + wx - pt, qs + wy - qt);
            if x != 0 || y != 0 {
                generators.push(GaussRat::from_ints(x, y));
            }
        }
    }
    PlanarLattice::from_generators(&generators)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverInvariants {
    pub genus: usize,
    pub area: Int,
    pub covolume: Int,
    pub det: Int,
}

pub fn cover_class_invariants(c: &BranchedTorusCover) -> Result<CoverInvariants> {
    let genus = genus_of_branched_cover(c)?;
    let covolume = period_lattice_of_cover(c).covolume()?;
    if !covolume.is_integer() {
        return Err(Error::Internal("cover period lattice is not integral"));
    }
    let covolume = covolume.to_integer();
    let area = Int::from(c.degree());
    let (det, rem) = area.div_rem(&covolume);
    if rem != Int::from(0) {
        return Err(Error::Internal("degree is not a multiple of the covolume"));
    }
    Ok(CoverInvariants { genus, area, covolume, det })
}
