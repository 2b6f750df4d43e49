//! Independent oracles and generators shared by the integration and acceptance tests.
//!
//! Everything here works on plain complex numbers per character and avoids the
//! library's own evaluation paths.
#![allow(dead_code)]

use aholo::calculus::{CoordFactor, CoordTerm, CoordinatePolyMap, HolomorphicMapSpec, PolyMap, PolyTerm};
use aholo::multilinear::{wedge_basis, ALinearMap, AVector, AntisymForm};
use aholo::{Algebra, AlgebraElement};
use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    c(rng.random_range(-scale..scale), rng.random_range(-scale..scale))
}

/// A point of the closed disk of radius `scale`.
pub fn random_in_disk(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    Complex64::from_polar(scale * rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU))
}

pub fn random_element(rng: &mut ChaCha8Rng, m: usize, scale: f64) -> AlgebraElement {
    AlgebraElement::new((0..m).map(|_| random_complex(rng, scale)).collect())
}

pub fn random_vector(rng: &mut ChaCha8Rng, alg: Algebra, n: usize, scale: f64) -> AVector {
    AVector::new(alg, (0..n).map(|_| random_element(rng, alg.m(), scale)).collect()).unwrap()
}

pub fn random_disk_vector(rng: &mut ChaCha8Rng, alg: Algebra, n: usize, scale: f64) -> AVector {
    let entries = (0..n)
        .map(|_| AlgebraElement::new((0..alg.m()).map(|_| random_in_disk(rng, scale)).collect()))
        .collect();
    AVector::new(alg, entries).unwrap()
}

/// Random `A`-polynomial map with total degree at most `max_degree`.
pub fn random_poly(rng: &mut ChaCha8Rng, alg: Algebra, n: usize, k: usize, max_degree: u32, terms: usize) -> PolyMap {
    let terms = (0..terms)
        .map(|_| {
            let total = rng.random_range(0..=max_degree);
            let mut exponents = vec![0u32; n];
            for _ in 0..total {
                exponents[rng.random_range(0..n)] += 1;
            }
            PolyTerm {
                output: rng.random_range(0..k),
                exponents,
                coeff: random_element(rng, alg.m(), 1.0),
            }
        })
        .collect();
    PolyMap::new(alg, n, k, terms).unwrap()
}

fn term_value(t: &PolyTerm, z: &AVector, j: usize, skip: &[usize]) -> Complex64 {
    // value of coeff * prod z_l^{e_l - (#times l appears in skip)}, with falling-factorial weights
    let mut value = t.coeff.component(j);
    for (l, &e) in t.exponents.iter().enumerate() {
        let drop = skip.iter().filter(|&&s| s == l).count() as u32;
        if drop > e {
            return c(0.0, 0.0);
        }
        let weight: u32 = (0..drop).map(|i| e - i).product();
        value *= weight as f64;
        value *= z.coord(l, j).powu(e - drop);
    }
    value
}

/// Symbolic `(Df)_z(ż)` of an `A`-polynomial, per character.
pub fn symbolic_derivative(p: &PolyMap, z: &AVector, zdot: &AVector) -> Vec<Vec<Complex64>> {
    let m = p.algebra().m();
    (0..m)
        .map(|j| {
            let mut out = vec![c(0.0, 0.0); p.k()];
            for t in p.terms() {
                for l in 0..p.n() {
                    out[t.output] += term_value(t, z, j, &[l]) * zdot.coord(l, j);
                }
            }
            out
        })
        .collect()
}

/// Symbolic `D^2 f_z(h, ż)`.
pub fn symbolic_second_derivative(p: &PolyMap, z: &AVector, h: &AVector, zdot: &AVector) -> Vec<Vec<Complex64>> {
    let m = p.algebra().m();
    (0..m)
        .map(|j| {
            let mut out = vec![c(0.0, 0.0); p.k()];
            for t in p.terms() {
                for a in 0..p.n() {
                    for b in 0..p.n() {
                        out[t.output] += term_value(t, z, j, &[a, b]) * h.coord(a, j) * zdot.coord(b, j);
                    }
                }
            }
            out
        })
        .collect()
}

/// Symbolic Jacobian as an `A`-matrix.
pub fn symbolic_jacobian(p: &PolyMap, z: &AVector) -> ALinearMap {
    let alg = p.algebra();
    let mats: Vec<DMatrix<Complex64>> = (0..alg.m())
        .map(|j| {
            let mut mat = DMatrix::zeros(p.k(), p.n());
            for t in p.terms() {
                for l in 0..p.n() {
                    mat[(t.output, l)] += term_value(t, z, j, &[l]);
                }
            }
            mat
        })
        .collect();
    ALinearMap::from_component_matrices(&mats).unwrap()
}

/// Max-norm distance between an `AVector` and per-character values `[j][o]`.
pub fn distance_to(v: &AVector, want: &[Vec<Complex64>]) -> f64 {
    want.iter()
        .enumerate()
        .flat_map(|(j, row)| row.iter().enumerate().map(move |(o, w)| (v.coord(o, j) - w).norm()))
        .fold(0.0, f64::max)
}

pub fn max_abs(want: &[Vec<Complex64>]) -> f64 {
    want.iter().flatten().map(|w| w.norm()).fold(0.0, f64::max)
}

pub fn permutation_parity(perm: &[usize]) -> f64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1.0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Leibniz-formula determinant of a row-major `k x k` matrix.
pub fn leibniz_det(entries: &[Complex64], k: usize) -> Complex64 {
    (0..k)
        .permutations(k)
        .map(|perm| {
            let prod: Complex64 = (0..k).map(|r| entries[r * k + perm[r]]).product();
            prod * permutation_parity(&perm)
        })
        .sum()
}

/// `f(x_1, .., x_k) = Σ_I f_I det[x_c(i_r)]`, per character, via Leibniz.
pub fn oracle_form_eval(f: &AntisymForm, args: &[AVector]) -> Vec<Complex64> {
    let k = f.degree();
    let m = f.algebra().m();
    (0..m)
        .map(|j| {
            wedge_basis(f.n(), k)
                .iter()
                .zip(f.coeffs())
                .map(|(idx, coef)| {
                    let entries: Vec<Complex64> =
                        (0..k).flat_map(|r| (0..k).map(move |col| (r, col))).map(|(r, col)| args[col].coord(idx[r], j)).collect();
                    coef.component(j) * leibniz_det(&entries, k)
                })
                .sum()
        })
        .collect()
}

pub fn random_form(rng: &mut ChaCha8Rng, alg: Algebra, n: usize, k: usize) -> AntisymForm {
    let coeffs = wedge_basis(n, k).iter().map(|_| random_element(rng, alg.m(), 1.0)).collect();
    AntisymForm::from_coeffs(alg, n, k, coeffs).unwrap()
}

pub fn random_map(rng: &mut ChaCha8Rng, alg: Algebra, rows: usize, cols: usize) -> ALinearMap {
    let rows = (0..rows).map(|_| (0..cols).map(|_| random_element(rng, alg.m(), 1.0)).collect()).collect();
    ALinearMap::from_rows(alg, rows).unwrap()
}

/// Random square map whose every component has 2-norm condition number at most `max_cond`.
pub fn random_invertible(rng: &mut ChaCha8Rng, alg: Algebra, n: usize, max_cond: f64) -> ALinearMap {
    loop {
        let f = random_map(rng, alg, n, n);
        let ok = (0..alg.m()).all(|j| {
            let sv = f.component_matrix(j).svd(false, false).singular_values;
            let (lo, hi) = sv.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &s| (lo.min(s), hi.max(s)));
            lo > 0.0 && hi / lo <= max_cond
        });
        if ok {
            return f;
        }
    }
}

/// Componentwise map `z |-> g(z)` where output character `j` sees all characters.
pub fn coord_term(output: [usize; 2], coeff: f64, factors: &[(usize, usize, bool)]) -> CoordTerm {
    CoordTerm {
        output,
        coeff: [coeff, 0.0],
        factors: factors
            .iter()
            .map(|&(var, comp, conj)| CoordFactor {
                var,
                comp,
                power: 1,
                conj,
            })
            .collect(),
    }
}

pub fn coord_map(m: usize, n: usize, k: usize, terms: Vec<CoordTerm>) -> HolomorphicMapSpec {
    HolomorphicMapSpec::coordinate(CoordinatePolyMap::new(Algebra::new(m).unwrap(), n, k, terms).unwrap())
}

/// `z_j |-> z_{σ(j)}` on one variable.
pub fn permutation_map(m: usize, sigma: &[usize]) -> HolomorphicMapSpec {
    coord_map(m, 1, 1, (0..m).map(|j| coord_term([0, j], 1.0, &[(0, sigma[j], false)])).collect())
}

/// Every output character is the mean of the input characters.
pub fn averaging_map(m: usize) -> HolomorphicMapSpec {
    let w = 1.0 / m as f64;
    coord_map(
        m,
        1,
        1,
        (0..m).flat_map(|j| (0..m).map(move |i| coord_term([0, j], w, &[(0, i, false)]))).collect(),
    )
}

pub fn conjugation_map(m: usize) -> HolomorphicMapSpec {
    coord_map(m, 1, 1, (0..m).map(|j| coord_term([0, j], 1.0, &[(0, j, true)])).collect())
}

pub fn real_part_map(m: usize) -> HolomorphicMapSpec {
    coord_map(
        m,
        1,
        1,
        (0..m)
            .flat_map(|j| [coord_term([0, j], 0.5, &[(0, j, false)]), coord_term([0, j], 0.5, &[(0, j, true)])])
            .collect(),
    )
}

/// Output 0 gets `z_(0) z_(1)`; the other characters are the identity.
pub fn mixed_product_map(m: usize) -> HolomorphicMapSpec {
    let mut terms = vec![coord_term([0, 0], 1.0, &[(0, 0, false), (0, 1, false)])];
    terms.extend((1..m).map(|j| coord_term([0, j], 1.0, &[(0, j, false)])));
    coord_map(m, 1, 1, terms)
}

/// Coefficients of `p(x - t)` from those of `p(x)` (ascending powers).
pub fn shift_poly(coeffs: &[AlgebraElement], t: &AlgebraElement) -> Vec<AlgebraElement> {
    let m = t.m();
    let mut out = vec![AlgebraElement::new(vec![c(0.0, 0.0); m]); coeffs.len()];
    let neg_t = -t;
    for (d, a) in coeffs.iter().enumerate() {
        let mut binom = 1.0;
        for (i, slot) in out.iter_mut().enumerate().take(d + 1) {
            // a * C(d, i) x^i (-t)^(d-i)
            let term = &a.scale(c(binom, 0.0)) * &neg_t.powi((d - i) as i32);
            *slot = &*slot + &term;
            binom = binom * (d - i) as f64 / (i + 1) as f64;
        }
    }
    out
}

/// `(z1, z2) |-> (z1 + Σ p_i z2^i, z2 + t)` as an `A`-polynomial map.
pub fn shear(alg: Algebra, p: &[AlgebraElement], t: &AlgebraElement) -> PolyMap {
    let mut terms = vec![
        PolyTerm { output: 0, exponents: vec![1, 0], coeff: alg.one() },
        PolyTerm { output: 1, exponents: vec![0, 1], coeff: alg.one() },
        PolyTerm { output: 1, exponents: vec![0, 0], coeff: t.clone() },
    ];
    for (i, a) in p.iter().enumerate() {
        terms.push(PolyTerm { output: 0, exponents: vec![0, i as u32], coeff: a.clone() });
    }
    PolyMap::new(alg, 2, 2, terms).unwrap()
}

/// Inverse of [`shear`]: `(w1, w2) |-> (w1 - p(w2 - t), w2 - t)`.
pub fn shear_inverse(alg: Algebra, p: &[AlgebraElement], t: &AlgebraElement) -> PolyMap {
    let shifted: Vec<AlgebraElement> = shift_poly(p, t).iter().map(|a| -a).collect();
    shear(alg, &shifted, &-t)
}

/// Three charts on `A^2` (`m = 2`) glued by polynomial shears, with the triple `(0, 1, 2)`.
pub fn three_chart_atlas() -> aholo::manifold::Atlas {
    use aholo::domain::DomainDescriptor;
    use aholo::manifold::{Atlas, Chart, Transition, TransitionMap};

    let alg = Algebra::new(2).unwrap();
    let zero = alg.zero();
    let a = AlgebraElement::new(vec![c(0.5, 0.25), c(-0.75, 0.0)]);
    let b = AlgebraElement::new(vec![c(0.0, 0.3), c(0.2, -0.1)]);
    let t = AlgebraElement::new(vec![c(1.0, -0.5), c(0.0, 2.0)]);
    let p01 = vec![zero.clone(), zero.clone(), a.clone()];
    let p12 = vec![zero.clone(), zero.clone(), zero.clone(), b.clone()];
    let p02 = vec![zero.clone(), zero.clone(), a, b];

    let full = DomainDescriptor::full(alg, 2);
    let charts = ["U0", "U1", "U2"]
        .map(|name| Chart { name: name.into(), domain: full.clone(), witness: AVector::zeros(alg, 2) })
        .to_vec();
    let mut transitions = Vec::new();
    for (from, to, p, shift) in [(0, 1, &p01, &zero), (1, 2, &p12, &t), (0, 2, &p02, &t)] {
        let fwd = format!("U{from}->U{to}");
        let bwd = format!("U{to}->U{from}");
        transitions.push(Transition {
            name: fwd.clone(),
            from,
            to,
            overlap: full.clone(),
            map: TransitionMap::Polynomial(shear(alg, p, shift)),
            inverse: bwd.clone(),
        });
        transitions.push(Transition {
            name: bwd,
            from: to,
            to: from,
            overlap: full.clone(),
            map: TransitionMap::Polynomial(shear_inverse(alg, p, shift)),
            inverse: fwd,
        });
    }
    Atlas::new(alg, 2, charts, transitions, vec![[0, 1, 2]]).unwrap()
}
