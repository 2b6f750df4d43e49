//! Antisymmetric `(A, k)`-linear forms on `A^n` in the wedge basis.

use itertools::Itertools;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{det, wedge_basis, ALinearMap, AVector};
use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};

/// A continuous antisymmetric form `(A^n)^k -> A`.
///
/// `coeffs[r]` is the coefficient of `dz^I` where `I` is the `r`-th strictly
/// increasing `k`-tuple of `0..n` in lexicographic order. The coefficient on
/// `I` is the value of the form on `(e_{i_1}, .., e_{i_k})`.
#[derive(Debug, Clone, PartialEq)]
pub struct AntisymForm {
    m: usize,
    n: usize,
    k: usize,
    coeffs: Vec<AlgebraElement>,
}

impl AntisymForm {
    pub fn zero(algebra: Algebra, n: usize, k: usize) -> Self {
        Self {
            m: algebra.m(),
            n,
            k,
            coeffs: vec![algebra.zero(); super::wedge_rank(n, k)],
        }
    }

    /// `a * dz^I`.
    pub fn monomial(algebra: Algebra, n: usize, indices: &[usize], a: AlgebraElement) -> Result<Self> {
        let mut f = Self::zero(algebra, n, indices.len());
        f.set(indices, a)?;
        Ok(f)
    }

    pub fn from_coeffs(algebra: Algebra, n: usize, k: usize, coeffs: Vec<AlgebraElement>) -> Result<Self> {
        let rank = super::wedge_rank(n, k);
        if coeffs.len() != rank {
            return Err(Error::LengthMismatch {
                expected: rank,
                found: coeffs.len(),
            });
        }
        for c in &coeffs {
            algebra.check(c)?;
        }
        Ok(Self {
            m: algebra.m(),
            n,
            k,
            coeffs,
        })
    }

    pub fn algebra(&self) -> Algebra {
        Algebra::new(self.m).expect("form algebra is nonempty")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[AlgebraElement] {
        &self.coeffs
    }

    pub fn coeff(&self, indices: &[usize]) -> Result<&AlgebraElement> {
        Ok(&self.coeffs[self.position(indices)?])
    }

    pub fn set(&mut self, indices: &[usize], a: AlgebraElement) -> Result<()> {
        self.algebra().check(&a)?;
        let pos = self.position(indices)?;
        self.coeffs[pos] = a;
        Ok(())
    }

    fn position(&self, indices: &[usize]) -> Result<usize> {
        check_indices(indices, self.n)?;
        if indices.len() != self.k {
            return Err(Error::BadIndices(format!(
                "expected {} indices, got {}",
                self.k,
                indices.len()
            )));
        }
        Ok(combination_rank(indices, self.n))
    }

    /// Evaluates the form: `sum_I coeff_I * det_A(rows I of [x_1 .. x_k])`.
    pub fn eval(&self, args: &[AVector]) -> Result<AlgebraElement> {
        if args.len() != self.k {
            return Err(Error::RankMismatch {
                context: "eval_form argument count",
                expected: self.k,
                found: args.len(),
            });
        }
        for x in args {
            if x.rank() != self.n {
                return Err(Error::RankMismatch {
                    context: "eval_form argument rank",
                    expected: self.n,
                    found: x.rank(),
                });
            }
            if x.m() != self.m {
                return Err(Error::MismatchedAlgebra {
                    expected: self.m,
                    found: x.m(),
                });
            }
        }
        let alg = self.algebra();
        // Evaluate on a canonical argument order and apply the sorting sign, so
        // transpositions negate the value exactly rather than up to rounding.
        let mut order: Vec<usize> = (0..self.k).collect();
        order.sort_by(|&a, &b| canonical_cmp(&args[a], &args[b]));
        if order.windows(2).any(|w| canonical_cmp(&args[w[0]], &args[w[1]]).is_eq()) {
            return Ok(alg.zero());
        }
        let mut total = alg.zero();
        for (idx, coeff) in wedge_basis(self.n, self.k).iter().zip(&self.coeffs) {
            if coeff.is_zero() {
                continue;
            }
            let minor = det_a(self.m, self.k, |r, c| args[order[c]].entry(idx[r]));
            total = &total + &(coeff * &minor);
        }
        Ok(if permutation_sign(&order) < 0 { -total } else { total })
    }

    /// Largest coefficient difference.
    pub fn distance(&self, other: &AntisymForm) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn canonical_cmp(a: &AVector, b: &AVector) -> std::cmp::Ordering {
    let key = |v: &AVector| -> Vec<(f64, f64)> {
        v.entries().iter().flat_map(|e| e.components().iter().map(|z| (z.re, z.im))).collect()
    };
    key(a)
        .iter()
        .zip(&key(b))
        .map(|(x, y)| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)))
        .find(|o| !o.is_eq())
        .unwrap_or(std::cmp::Ordering::Equal)
}

pub fn eval_form(f: &AntisymForm, args: &[AVector]) -> Result<AlgebraElement> {
    f.eval(args)
}

/// Determinant over `A` of the `k x k` matrix `entry(r, c)`, one character at a time.
pub(crate) fn det_a<'a>(m: usize, k: usize, entry: impl Fn(usize, usize) -> &'a AlgebraElement) -> AlgebraElement {
    let mut buf = vec![Complex64::new(0.0, 0.0); k * k];
    let comps = (0..m)
        .map(|j| {
            for r in 0..k {
                for c in 0..k {
                    buf[r * k + c] = entry(r, c).component(j);
                }
            }
            det::det(&buf, k)
        })
        .collect();
    AlgebraElement::new(comps)
}

/// `F^* f` for `F: A^{n1} -> A^{n2}` and `f` on `A^{n2}`.
///
/// On wedge coefficients this is the `k`-th compound matrix:
/// `(F^* f)_I = sum_J f_J det_A(F[J, I])`.
pub fn pullback(map: &ALinearMap, f: &AntisymForm) -> Result<AntisymForm> {
    if map.rows() != f.n {
        return Err(Error::RankMismatch {
            context: "pullback target rank",
            expected: f.n,
            found: map.rows(),
        });
    }
    if map.m() != f.m {
        return Err(Error::MismatchedAlgebra {
            expected: f.m,
            found: map.m(),
        });
    }
    let alg = f.algebra();
    let k = f.k;
    let source = wedge_basis(map.cols(), k);
    let target = wedge_basis(map.rows(), k);
    let coeffs = source
        .iter()
        .map(|cols| {
            target
                .iter()
                .zip(&f.coeffs)
                .filter(|(_, fj)| !fj.is_zero())
                .fold(alg.zero(), |acc, (rows, fj)| {
                    let minor = det_a(f.m, k, |r, c| map.get(rows[r], cols[c]));
                    &acc + &(fj * &minor)
                })
        })
        .collect();
    AntisymForm::from_coeffs(alg, map.cols(), k, coeffs)
}

/// Inverse of `g |-> F^* g` for invertible `F`: returns `(F^{-1})^* g`.
pub fn pullback_invert(map: &ALinearMap, g: &AntisymForm) -> Result<AntisymForm> {
    let inverse = map.inverse()?;
    pullback(&inverse, g)
}

/// The antisymmetrised tensor of a single wedge generator `dz^{i_1} ∧ .. ∧ dz^{i_k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorExpansion {
    pub terms: Vec<(i8, Vec<usize>)>,
}

impl TensorExpansion {
    /// `sum_sigma sgn(sigma) prod_l (x_l)_{i_sigma(l)}`.
    pub fn eval(&self, algebra: Algebra, args: &[AVector]) -> Result<AlgebraElement> {
        let mut total = algebra.zero();
        for (sign, proj) in &self.terms {
            if args.len() != proj.len() {
                return Err(Error::RankMismatch {
                    context: "tensor expansion argument count",
                    expected: proj.len(),
                    found: args.len(),
                });
            }
            let mut prod = algebra.scalar(Complex64::new(*sign as f64, 0.0));
            for (x, &i) in args.iter().zip(proj) {
                if i >= x.rank() {
                    return Err(Error::RankMismatch {
                        context: "tensor expansion argument rank",
                        expected: i + 1,
                        found: x.rank(),
                    });
                }
                prod = &prod * x.entry(i);
            }
            total = &total + &prod;
        }
        Ok(total)
    }
}

/// Expands `dz^I` into its signed sum of coordinate-projection tensor products.
pub fn antisymmetrize_fk(indices: &[usize], n: usize) -> Result<TensorExpansion> {
    check_indices(indices, n)?;
    let k = indices.len();
    let terms = (0..k)
        .permutations(k)
        .map(|perm| (permutation_sign(&perm), perm.iter().map(|&p| indices[p]).collect()))
        .collect();
    Ok(TensorExpansion { terms })
}

pub fn permutation_sign(perm: &[usize]) -> i8 {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_indices(indices: &[usize], n: usize) -> Result<()> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
        return Err(Error::BadIndices(format!("index {bad} out of range for rank {n}")));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadIndices(format!("{indices:?} is not strictly increasing")));
    }
    Ok(())
}

/// Lexicographic rank of a strictly increasing tuple among all `k`-subsets of `0..n`.
fn combination_rank(indices: &[usize], n: usize) -> usize {
    let k = indices.len();
    let mut rank = 0;
    let mut start = 0;
    for (pos, &i) in indices.iter().enumerate() {
        for skipped in start..i {
            rank += super::wedge_rank(n - skipped - 1, k - pos - 1);
        }
        start = i + 1;
    }
    rank
}

#[derive(Serialize, Deserialize)]
struct FormFile {
    n: usize,
    k: usize,
    coeffs: Vec<FormCoeff>,
}

#[derive(Serialize, Deserialize)]
struct FormCoeff {
    index: Vec<usize>,
    value: AlgebraElement,
}

impl Serialize for AntisymForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FormFile {
            n: self.n,
            k: self.k,
            coeffs: wedge_basis(self.n, self.k)
                .into_iter()
                .zip(&self.coeffs)
                .filter(|(_, v)| !v.is_zero())
                .map(|(idx, v)| FormCoeff {
                    index: idx.iter().map(|i| i + 1).collect(),
                    value: v.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AntisymForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let file = FormFile::deserialize(deserializer)?;
        let m = file
            .coeffs
            .first()
            .map(|c| c.value.m())
            .ok_or_else(|| D::Error::custom("form needs at least one coefficient to fix the algebra"))?;
        let algebra = Algebra::new(m).map_err(D::Error::custom)?;
        let mut form = AntisymForm::zero(algebra, file.n, file.k);
        for c in file.coeffs {
            if c.index.contains(&0) {
                return Err(D::Error::custom("form indices are 1-based"));
            }
            let idx: Vec<usize> = c.index.iter().map(|i| i - 1).collect();
            form.set(&idx, c.value).map_err(D::Error::custom)?;
        }
        Ok(form)
    }
}
