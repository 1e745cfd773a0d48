//! One-point evaluation codes `C(D, γP∞)` and their systematic forms.

mod indicator;
mod info;

use serde::Serialize;

pub use indicator::Indicator;
pub use info::{gamma_candidates, hermitian_info_positions, BReading, InfoForm, InfoPositions};

use crate::curve::{CurveSpec, PointOrder, PointTable};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;

/// Monomials `x^i y^j` spanning `L(γP∞)`, sorted by pole order then `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialBasis {
    pub pairs: Vec<(usize, usize)>,
    pub pole_x: usize,
    pub pole_y: usize,
}

impl MonomialBasis {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pole_order(&self, (i, j): (usize, usize)) -> usize {
        i * self.pole_x + j * self.pole_y
    }
}

pub fn rr_basis(curve: &CurveSpec, gamma: usize) -> Result<MonomialBasis> {
    let n = curve.n_affine();
    if gamma == 0 || gamma >= n {
        return Err(Error::GammaOutOfRange { gamma, n });
    }
    let (lx, ly) = (curve.pole_x(), curve.pole_y());
    let mut pairs: Vec<(usize, usize)> = (0..lx)
        .take_while(|j| j * ly <= gamma)
        .flat_map(|j| (0..=(gamma - j * ly) / lx).map(move |i| (i, j)))
        .collect();
    pairs.sort_by_key(|&(i, j)| (i * lx + j * ly, j));
    Ok(MonomialBasis {
        pairs,
        pole_x: lx,
        pole_y: ly,
    })
}

#[derive(Clone, Debug)]
struct Systematic {
    info_set: Vec<usize>,
    // π-position -> original coordinate
    order: Vec<usize>,
    g_sys: Matrix,
    h: Matrix,
}

#[derive(Clone, Debug)]
pub struct CodeSpec {
    gamma: usize,
    table: PointTable,
    basis: MonomialBasis,
    raw: Matrix,
    generator: Matrix,
    echelon: Matrix,
    pivots: Vec<usize>,
    systematic: Option<Systematic>,
}

pub fn build_code(curve: &CurveSpec, gamma: usize, order: PointOrder) -> Result<CodeSpec> {
    let table = curve.enumerate_points(order)?;
    CodeSpec::from_table(table, gamma)
}

impl CodeSpec {
    pub fn from_table(table: PointTable, gamma: usize) -> Result<CodeSpec> {
        let curve = table.curve().clone();
        let basis = rr_basis(&curve, gamma)?;
        let f = curve.field();
        let raw = Matrix::from_rows(
            basis
                .pairs
                .iter()
                .map(|&(i, j)| {
                    table
                        .points()
                        .iter()
                        .map(|p| f.mul(f.pow(p.x, i as u64), f.pow(p.y, j as u64)))
                        .collect()
                })
                .collect(),
        );
        // keep the first maximal independent set of rows
        let mut kept: Vec<usize> = Vec::new();
        for r in 0..raw.rows() {
            let mut trial = kept.clone();
            trial.push(r);
            if raw.select_rows(&trial).rank(f) == trial.len() {
                kept = trial;
            }
        }
        let generator = raw.select_rows(&kept);
        let mut echelon = generator.clone();
        let pivots = echelon.rref(f);
        Ok(CodeSpec {
            gamma,
            table,
            basis,
            raw,
            generator,
            echelon,
            pivots,
            systematic: None,
        })
    }

    pub fn curve(&self) -> &CurveSpec {
        self.table.curve()
    }

    pub fn field(&self) -> &FieldSpec {
        self.table.curve().field()
    }

    pub fn table(&self) -> &PointTable {
        &self.table
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.table.len()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn d_design(&self) -> usize {
        self.n() - self.gamma
    }

    /// Guaranteed error-correcting radius from the design distance.
    pub fn t(&self) -> usize {
        (self.d_design() - 1) / 2
    }

    /// Evaluations of every basis monomial, dependent rows included.
    pub fn raw_generator(&self) -> &Matrix {
        &self.raw
    }

    /// Independent evaluation rows (`k x n`).
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// Whether `v` is a codeword.
    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.n() {
            return false;
        }
        let f = self.field();
        let mut w = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            let factor = w[c];
            if factor.is_zero() {
                continue;
            }
            for (j, x) in w.iter_mut().enumerate() {
                *x = f.sub(*x, f.mul(factor, self.echelon.get(r, j)));
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    /// Whether the columns at `info` are independent; `info` must have `k` distinct entries.
    pub fn verify_information_set(&self, info: &[usize]) -> Result<bool> {
        self.check_index_set(info)?;
        Ok(self.generator.columns_independent(self.field(), info))
    }

    fn check_index_set(&self, info: &[usize]) -> Result<()> {
        if let Some(&bad) = info.iter().find(|&&i| i >= self.n()) {
            return Err(Error::Invalid(format!(
                "coordinate {bad} out of range 0..{}",
                self.n()
            )));
        }
        let distinct: std::collections::BTreeSet<_> = info.iter().collect();
        if info.len() != self.k() || distinct.len() != info.len() {
            return Err(Error::Cardinality {
                expected: self.k(),
                got: distinct.len(),
            });
        }
        Ok(())
    }

    /// Installs `G_sys = [I | A]` and `H = [-Aᵀ | I]` with the information
    /// set moved to the front.
    pub fn systematic_form(&self, info: &[usize]) -> Result<CodeSpec> {
        self.check_index_set(info)?;
        let f = self.field();
        let (n, k) = (self.n(), self.k());
        let mut order = info.to_vec();
        let mut in_info = vec![false; n];
        for &i in info {
            in_info[i] = true;
        }
        order.extend((0..n).filter(|&i| !in_info[i]));
        let mut g_sys = self.generator.select_columns(&order);
        let pivots = g_sys.rref(f);
        if pivots != (0..k).collect::<Vec<_>>() {
            return Err(Error::NotInformationSet(info.to_vec()));
        }
        let mut h = Matrix::zeros(n - k, n);
        for r in 0..n - k {
            for c in 0..k {
                h.set(r, c, f.neg(g_sys.get(c, k + r)));
            }
            h.set(r, k + r, FieldElement::ONE);
        }
        let mut out = self.clone();
        out.systematic = Some(Systematic {
            info_set: info.to_vec(),
            order,
            g_sys,
            h,
        });
        Ok(out)
    }

    fn sys(&self) -> Result<&Systematic> {
        self.systematic.as_ref().ok_or(Error::NoSystematicForm)
    }

    pub fn is_systematic(&self) -> bool {
        self.systematic.is_some()
    }

    pub fn info_set(&self) -> Result<&[usize]> {
        Ok(&self.sys()?.info_set)
    }

    /// Coordinates outside the information set, ascending.
    pub fn check_positions(&self) -> Result<&[usize]> {
        Ok(&self.sys()?.order[self.k()..])
    }

    /// `[I | A]` in permuted coordinates.
    pub fn systematic_generator(&self) -> Result<&Matrix> {
        Ok(&self.sys()?.g_sys)
    }

    /// `[-Aᵀ | I]` in permuted coordinates.
    pub fn parity_check(&self) -> Result<&Matrix> {
        Ok(&self.sys()?.h)
    }

    /// Original coordinate sitting at each permuted position.
    pub fn coordinate_order(&self) -> Result<&[usize]> {
        Ok(&self.sys()?.order)
    }

    pub fn to_permuted(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let sys = self.sys()?;
        self.check_len(v)?;
        Ok(sys.order.iter().map(|&i| v[i]).collect())
    }

    pub fn from_permuted(&self, w: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let sys = self.sys()?;
        self.check_len(w)?;
        let mut v = vec![FieldElement::ZERO; w.len()];
        for (pos, &i) in sys.order.iter().enumerate() {
            v[i] = w[pos];
        }
        Ok(v)
    }

    fn check_len(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// The codeword whose values on the information set are `message`.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let sys = self.sys()?;
        if message.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                got: message.len(),
            });
        }
        self.from_permuted(&sys.g_sys.left_mul_vec(self.field(), message))
    }

    /// `coeffs · G` with the unsystematized generator.
    pub fn encode_raw(&self, coeffs: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if coeffs.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                got: coeffs.len(),
            });
        }
        Ok(self.generator.left_mul_vec(self.field(), coeffs))
    }

    /// Re-encodes `word` from its values on the information set.
    pub fn reencode(&self, word: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let sys = self.sys()?;
        self.check_len(word)?;
        let message: Vec<FieldElement> = sys.info_set.iter().map(|&i| word[i]).collect();
        self.encode(&message)
    }

    /// `H · yᵀ` in permuted coordinates.
    pub fn syndrome(&self, y: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let yp = self.to_permuted(y)?;
        let h = &self.sys()?.h;
        Ok(h.transpose().left_mul_vec(self.field(), &yp))
    }

    /// `wt(H · yᵀ)`.
    ///
    /// Uses `H = [-Aᵀ | I]`: the syndrome is the difference between `y` and
    /// the re-encoding of `y|_I` on the check positions.
    pub fn syndrome_weight(&self, y: &[FieldElement]) -> Result<usize> {
        let c = self.reencode(y)?;
        Ok(y.iter().zip(&c).filter(|(a, b)| a != b).count())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let sys = self.systematic.as_ref();
        serde_json::json!({
            "curve": self.curve().kind(),
            "gamma": self.gamma,
            "ordering": self.table.order(),
            "n": self.n(),
            "k": self.k(),
            "genus": self.curve().genus(),
            "d_design": self.d_design(),
            "t": self.t(),
            "basis": self.basis.pairs,
            "info_set": sys.map(|s| &s.info_set),
            "generator": self.generator,
            "systematic_generator": sys.map(|s| &s.g_sys),
            "parity_check": sys.map(|s| &s.h),
        })
    }
}

/// Hamming weight.
pub fn weight(v: &[FieldElement]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basis_examples() {
        let c = CurveSpec::hermitian(4).unwrap();
        assert_eq!(rr_basis(&c, 5).unwrap().pairs, vec![(0, 0), (1, 0), (0, 1)]);
        assert_eq!(rr_basis(&c, 13).unwrap().len(), 8);
        assert_eq!(rr_basis(&c, 3).unwrap().pairs, vec![(0, 0)]);
        assert!(matches!(
            rr_basis(&c, 64),
            Err(Error::GammaOutOfRange { .. })
        ));
        assert!(matches!(
            rr_basis(&c, 0),
            Err(Error::GammaOutOfRange { .. })
        ));
    }

    #[test]
    fn build_examples() {
        let c2 = CurveSpec::hermitian(2).unwrap();
        let code = build_code(&c2, 3, PointOrder::Orbit).unwrap();
        assert_eq!((code.n(), code.k()), (8, 3));
        let c4 = CurveSpec::hermitian(4).unwrap();
        let code = build_code(&c4, 41, PointOrder::Orbit).unwrap();
        assert_eq!((code.k(), code.d_design()), (36, 23));
    }

    #[test]
    fn dimension_matches_riemann_roch() {
        for (curve, gammas) in [
            (
                CurveSpec::hermitian(3).unwrap(),
                (1..27).collect::<Vec<_>>(),
            ),
            (CurveSpec::norm_trace(2, 3).unwrap(), (1..32).collect()),
        ] {
            let g = curve.genus();
            for gamma in gammas {
                let code = build_code(&curve, gamma, PointOrder::Lex).unwrap();
                assert_eq!(code.k(), code.basis().len(), "evaluation is injective");
                if gamma > 2 * g - 2 {
                    assert_eq!(code.k(), gamma + 1 - g);
                }
            }
        }
    }

    #[test]
    fn systematic_form_properties() {
        let c = CurveSpec::hermitian(3).unwrap();
        let code = build_code(&c, 13, PointOrder::Orbit).unwrap();
        let info = hermitian_info_positions(&code).unwrap().info;
        let sys = code.systematic_form(&info).unwrap();
        let f = c.field();
        let g = sys.systematic_generator().unwrap();
        let k = sys.k();
        assert_eq!(
            g.select_columns(&(0..k).collect::<Vec<_>>()),
            Matrix::identity(k)
        );
        let h = sys.parity_check().unwrap();
        assert!(h.mul(f, &g.transpose()).is_zero());
        // un-permuting G_sys gives the same row space
        let rows: Vec<Vec<FieldElement>> = g
            .row_vecs()
            .iter()
            .map(|r| sys.from_permuted(r).unwrap())
            .collect();
        assert_eq!(
            Matrix::from_rows(rows).row_space(f),
            code.generator().row_space(f)
        );
    }

    #[test]
    fn information_set_checks() {
        let c = CurveSpec::hermitian(3).unwrap();
        let code = build_code(&c, 5, PointOrder::Orbit).unwrap();
        let info = hermitian_info_positions(&code).unwrap().info;
        assert!(code.verify_information_set(&info).unwrap());
        let mut dup = info.clone();
        dup[1] = dup[0];
        assert!(matches!(
            code.verify_information_set(&dup),
            Err(Error::Cardinality { .. })
        ));
        assert!(matches!(
            code.syndrome_weight(&[]),
            Err(Error::NoSystematicForm)
        ));
        // on P_0 the basis 1, x, y collapses to 1, y
        let bad = code
            .table()
            .line_indices(crate::curve::Axis::XLine, FieldElement::ZERO);
        assert_eq!(code.k(), 3);
        assert!(!code.verify_information_set(&bad).unwrap());
        assert!(matches!(
            code.systematic_form(&bad),
            Err(Error::NotInformationSet(_))
        ));
    }

    #[test]
    fn syndrome_weight_matches_matrix() {
        let c = CurveSpec::hermitian(3).unwrap();
        let code = build_code(&c, 5, PointOrder::Orbit).unwrap();
        let info = hermitian_info_positions(&code).unwrap().info;
        let code = code.systematic_form(&info).unwrap();
        let f = c.field();
        let mut y = code
            .encode(&[f.zeta(), FieldElement::ZERO, f.zeta_pow(5)])
            .unwrap();
        assert_eq!(code.syndrome_weight(&y).unwrap(), 0);
        assert!(code.contains(&y));
        y[info[0]] = f.add(y[info[0]], FieldElement::ONE);
        let s = code.syndrome(&y).unwrap();
        assert_eq!(weight(&s), code.syndrome_weight(&y).unwrap());
        assert!(weight(&s) > code.t());
    }

    proptest! {
        #[test]
        fn encode_is_in_code(m in proptest::collection::vec(0u32..9, 3)) {
            let c = CurveSpec::hermitian(3).unwrap();
            let f = c.field();
            let code = build_code(&c, 5, PointOrder::Orbit).unwrap();
            let info = hermitian_info_positions(&code).unwrap().info;
            let code = code.systematic_form(&info).unwrap();
            let msg: Vec<FieldElement> = m.iter().map(|&i| f.element(i)).collect();
            let cw = code.encode(&msg).unwrap();
            prop_assert!(code.contains(&cw));
            prop_assert!(weight(&code.syndrome(&cw).unwrap()) == 0);
            let back: Vec<FieldElement> = info.iter().map(|&i| cw[i]).collect();
            prop_assert_eq!(back, msg);
        }
    }
}
