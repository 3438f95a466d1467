#![allow(dead_code)]

use isoperiod_core::arith::{GaussRat, Int, Rat};
use isoperiod_core::covers::{BranchedTorusCover, Origami, Permutation};
use isoperiod_core::curve::{Curve, HyperellipticCurve, PlaneQuartic, Poly};
use isoperiod_core::lattice::{pairing, SpMatrix};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn random_rat(r: &mut impl Rng, bound: i64) -> Rat {
    rat(r.gen_range(-bound..=bound), r.gen_range(1..=bound))
}

pub fn random_nonzero_rat(r: &mut impl Rng, bound: i64) -> Rat {
    loop {
        let x = random_rat(r, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_gauss(r: &mut impl Rng, bound: i64) -> GaussRat {
    GaussRat::new(random_rat(r, bound), random_rat(r, bound))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
    fn components(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Genus of a square-tiled surface from its explicit square complex.
pub fn origami_genus_by_euler(o: &Origami) -> usize {
    let d = o.degree();
    // corners of square s: 4s + {0: bottom-left, 1: bottom-right, 2: top-left, 3: top-right}
    let mut uf = UnionFind::new(4 * d);
    for s in 0..d {
        let (h, v) = (o.h().apply(s), o.v().apply(s));
        uf.union(4 * s + 1, 4 * h);
        uf.union(4 * s + 3, 4 * h + 2);
        uf.union(4 * s + 2, 4 * v);
        uf.union(4 * s + 3, 4 * v + 1);
    }
    let chi = uf.components() as i64 - 2 * d as i64 + d as i64;
    assert_eq!(chi % 2, 0);
    (1 - chi / 2) as usize
}

/// Genus of a branched torus cover from a lifted cell structure.
///
/// Base cells: one vertex, edges `a, b, c_1..c_k`, one polygon face with
/// boundary `c_k ... c_1 B A b a` (read left to right, capitals inverse) and one
/// disk per branch point bounded by `c_i`. Each sheet lifts the polygon, whose
/// boundary must close; the disks over `p_i` are the closed chains of lifted
/// `c_i` edges.
pub fn branched_genus_by_euler(c: &BranchedTorusCover) -> usize {
    let d = c.degree();
    let k = c.branch().len();
    let (a, b) = (c.a(), c.b());
    let (ai, bi) = (a.inverse(), b.inverse());
    for s in 0..d {
        let mut t = s;
        for ci in c.branch().iter().rev() {
            t = ci.apply(t);
        }
        for p in [&bi, &ai, b, a] {
            t = p.apply(t);
        }
        assert_eq!(t, s, "lifted polygon does not close");
    }
    let mut disks = 0;
    for ci in c.branch() {
        let mut uf = UnionFind::new(d);
        for s in 0..d {
            uf.union(s, ci.apply(s));
        }
        disks += uf.components();
    }
    let v = d as i64;
    let e = (d * (2 + k)) as i64;
    let f = (d + disks) as i64;
    let chi = v - e + f;
    assert_eq!(chi % 2, 0);
    (1 - chi / 2) as usize
}

/// Pfaffian by expansion along the first row.
pub fn brute_pfaffian(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    if n % 2 == 1 {
        return Rat::zero();
    }
    let mut total = Rat::zero();
    for j in 1..n {
        let rest: Vec<usize> = (1..n).filter(|&x| x != j).collect();
        let minor: Vec<Vec<Rat>> = rest.iter().map(|&r| rest.iter().map(|&c| m[r][c].clone()).collect()).collect();
        let term = &m[0][j] * brute_pfaffian(&minor);
        if j % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn transvection(v: &[Int], k: &Int) -> SpMatrix {
    let n = v.len();
    let cols: Vec<Vec<Int>> = (0..n)
        .map(|j| {
            let mut e = vec![Int::zero(); n];
            e[j] = Int::one();
            let w = pairing(v, &e) * k;
            e.iter().zip(v).map(|(x, y)| x + &w * y).collect()
        })
        .collect();
    SpMatrix::from_columns(&cols).expect("transvections are symplectic")
}

/// Product of random transvections `x -> x + k ω(v, x) v` with small `v`.
pub fn random_sp(r: &mut impl Rng, genus: usize, steps: usize) -> SpMatrix {
    let mut m = SpMatrix::identity(genus);
    for _ in 0..steps {
        let mut v = vec![Int::zero(); 2 * genus];
        let support: Vec<usize> = (0..2 * genus).collect::<Vec<_>>().choose_multiple(r, 2).copied().collect();
        for i in support {
            v[i] = Int::from(r.gen_range(-1..=1i64));
        }
        let k = Int::from(if r.gen_bool(0.5) { 1 } else { -1 });
        m = transvection(&v, &k).compose(&m);
    }
    m
}

/// Random rational `SL(2)` matrix as a product of shears.
pub fn random_sl2(r: &mut impl Rng) -> [[Rat; 2]; 2] {
    let s = random_rat(r, 9);
    let t = random_rat(r, 9);
    let l = random_nonzero_rat(r, 9);
    // [[l, 0], [0, 1/l]] * [[1, s], [0, 1]] * [[1, 0], [t, 1]]
    let a = [[Rat::one(), s], [Rat::zero(), Rat::one()]];
    let b = [[Rat::one(), Rat::zero()], [t, Rat::one()]];
    let ab = mul2(&a, &b);
    let dl = [[l.clone(), Rat::zero()], [Rat::zero(), l.recip()]];
    mul2(&dl, &ab)
}

fn mul2(a: &[[Rat; 2]; 2], b: &[[Rat; 2]; 2]) -> [[Rat; 2]; 2] {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn random_permutation(r: &mut impl Rng, d: usize) -> Permutation {
    let mut v: Vec<usize> = (0..d).collect();
    v.shuffle(r);
    Permutation::new(v).unwrap()
}

/// `y^2 = c prod (x - r_i)` with `2g + 2` distinct small rational roots avoiding `avoid`.
pub fn random_hyperelliptic(r: &mut impl Rng, genus: usize, avoid: &[Rat]) -> HyperellipticCurve {
    let mut roots: Vec<Rat> = Vec::new();
    while roots.len() < 2 * genus + 2 {
        let x = random_rat(r, 12);
        if !roots.contains(&x) && !avoid.contains(&x) {
            roots.push(x);
        }
    }
    let c = random_nonzero_rat(r, 5);
    HyperellipticCurve::new(Poly::from_roots(&roots).scale(&c)).unwrap()
}

/// Random squarefree `f` of degree `2g + 1` or `2g + 2` with integer coefficients.
pub fn random_hyperelliptic_dense(r: &mut impl Rng, genus: usize) -> HyperellipticCurve {
    loop {
        let deg = 2 * genus + 1 + r.gen_range(0..2usize);
        let mut c: Vec<i64> = (0..deg).map(|_| r.gen_range(-9..=9)).collect();
        c.push(r.gen_range(1..=5));
        if let Ok(h) = HyperellipticCurve::new(Poly::from_i64(&c)) {
            return h;
        }
    }
}

pub fn random_quartic(r: &mut impl Rng) -> PlaneQuartic {
    loop {
        let c: Vec<Rat> = (0..15).map(|_| rat(r.gen_range(-4..=4), 1)).collect();
        if let Ok(q) = PlaneQuartic::new(c) {
            return q;
        }
    }
}

pub fn random_vector(r: &mut impl Rng, n: usize, bound: i64) -> Vec<Rat> {
    loop {
        let v: Vec<Rat> = (0..n).map(|_| random_rat(r, bound)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn hyper_curve(h: &HyperellipticCurve) -> Curve {
    Curve::Hyperelliptic(h.clone())
}
