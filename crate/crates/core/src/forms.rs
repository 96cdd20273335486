//! Exterior calculus on a single coordinate chart.
//!
//! Index sets are bitmasks (charts have at most 32 coordinates). A form
//! stores only its nonzero coefficients, keyed by the mask of the basis
//! monomial `dx_{i1} ^ .. ^ dx_{ip}` with `i1 < .. < ip`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use symexpr::{Expr, Symbol};

use crate::linalg;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub name: String,
    pub coords: Vec<Symbol>,
}

impl Chart {
    pub fn new(name: &str, coords: Vec<Symbol>) -> Arc<Self> {
        assert!(coords.len() <= 32, "charts are limited to 32 coordinates");
        Arc::new(Chart { name: name.to_string(), coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn index_of(&self, s: Symbol) -> Option<usize> {
        self.coords.iter().position(|&c| c == s)
    }
}

fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) {
    assert!(Arc::ptr_eq(a, b) || a == b, "chart mismatch: {} vs {}", a.name, b.name);
}

/// Sign of `e_a ^ e_b` relative to the sorted monomial of `a | b`
/// (zero when the masks overlap).
pub fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let k = bb.trailing_zeros();
        swaps += (a >> k).count_ones();
        bb &= bb - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn mask_of(idx: &[usize]) -> Option<(u32, i32)> {
    let mut mask = 0u32;
    let mut sign = 1;
    for &i in idx {
        let bit = 1u32 << i;
        if mask & bit != 0 {
            return None;
        }
        if (mask >> i).count_ones() % 2 == 1 {
            sign = -sign;
        }
        mask |= bit;
    }
    Some((mask, sign))
}

pub fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Coefficients of a homogeneous element of an exterior algebra over an
/// abstract basis.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ext {
    pub degree: usize,
    pub terms: BTreeMap<u32, Expr>,
}

impl Ext {
    pub fn zero(degree: usize) -> Self {
        Ext { degree, terms: BTreeMap::new() }
    }

    pub fn scalar(f: Expr) -> Self {
        let mut e = Ext::zero(0);
        e.push(0, f);
        e
    }

    pub fn basis(i: usize) -> Self {
        let mut e = Ext::zero(1);
        e.push(1 << i, Expr::one());
        e
    }

    pub fn from_one_form(coeffs: &[Expr]) -> Self {
        let mut e = Ext::zero(1);
        for (i, c) in coeffs.iter().enumerate() {
            e.push(1 << i, c.clone());
        }
        e
    }

    fn push(&mut self, mask: u32, c: Expr) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mask) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at an index list in any order, with the permutation sign.
    pub fn coeff(&self, idx: &[usize]) -> Expr {
        match mask_of(idx) {
            None => Expr::zero(),
            Some((m, s)) => {
                let c = self.terms.get(&m).cloned().unwrap_or_else(Expr::zero);
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn add(&self, o: &Ext) -> Ext {
        assert!(self.degree == o.degree || self.is_zero() || o.is_zero(), "degree mismatch");
        let mut r = self.clone();
        r.degree = if self.is_zero() { o.degree } else { self.degree };
        for (m, c) in &o.terms {
            r.push(*m, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Ext {
        Ext { degree: self.degree, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub(&self, o: &Ext) -> Ext {
        self.add(&o.neg())
    }

    pub fn scale(&self, f: &Expr) -> Ext {
        if f.is_zero() {
            return Ext::zero(self.degree);
        }
        Ext { degree: self.degree, terms: self.terms.iter().map(|(m, c)| (*m, c * f)).collect() }
    }

    pub fn wedge(&self, o: &Ext) -> Ext {
        let mut r = Ext::zero(self.degree + o.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let s = wedge_sign(*ma, *mb);
                if s == 0 {
                    continue;
                }
                let p = ca * cb;
                r.push(ma | mb, if s < 0 { -p } else { p });
            }
        }
        r
    }

    /// Contraction with a vector given by components in the same basis.
    pub fn interior(&self, v: &[Expr]) -> Ext {
        let mut r = Ext::zero(self.degree.saturating_sub(1));
        if self.degree == 0 {
            return r;
        }
        for (m, c) in &self.terms {
            for (pos, i) in indices_of(*m).into_iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let t = c * &v[i];
                r.push(m & !(1 << i), if pos % 2 == 1 { -t } else { t });
            }
        }
        r
    }

    /// Linear change of basis: old basis element `k` becomes `images[k]`.
    pub fn substitute_basis(&self, images: &[Ext]) -> Ext {
        let mut r = Ext::zero(self.degree);
        for (m, c) in &self.terms {
            let mut acc = Ext::scalar(c.clone());
            for i in indices_of(*m) {
                acc = acc.wedge(&images[i]);
                if acc.is_zero() {
                    break;
                }
            }
            r = r.add(&acc);
        }
        r.degree = self.degree;
        r
    }

    pub fn map_coeffs<F: Fn(&Expr) -> Result<Expr, Error>>(&self, f: F) -> Result<Ext, Error> {
        let mut r = Ext::zero(self.degree);
        for (m, c) in &self.terms {
            r.push(*m, f(c)?);
        }
        Ok(r)
    }

    /// Renders with basis symbols `{prefix}{i}`.
    pub fn render(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = indices_of(*m).iter().map(|i| format!("{prefix}{i}")).collect();
                if mono.is_empty() {
                    format!("{c}")
                } else {
                    format!("({c})*{}", mono.join("^"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// A differential form in the coordinate basis of a chart.
#[derive(Clone, PartialEq)]
pub struct Form {
    pub chart: Arc<Chart>,
    pub ext: Ext,
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}]({})", self.chart.name, self)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ext.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .ext
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = indices_of(*m).iter().map(|&i| format!("d{}", self.chart.coords[i])).collect();
                if mono.is_empty() {
                    format!("{c}")
                } else {
                    format!("({c})*{}", mono.join("^"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Form {
    pub fn zero(chart: &Arc<Chart>, degree: usize) -> Self {
        Form { chart: chart.clone(), ext: Ext::zero(degree) }
    }

    pub fn function(chart: &Arc<Chart>, f: Expr) -> Self {
        Form { chart: chart.clone(), ext: Ext::scalar(f) }
    }

    pub fn dx(chart: &Arc<Chart>, i: usize) -> Self {
        Form { chart: chart.clone(), ext: Ext::basis(i) }
    }

    /// `dx` of the coordinate with the given symbol.
    pub fn d_coord(chart: &Arc<Chart>, s: Symbol) -> Self {
        Self::dx(chart, chart.index_of(s).expect("symbol is a chart coordinate"))
    }

    pub fn one_form(chart: &Arc<Chart>, coeffs: &[Expr]) -> Self {
        assert_eq!(coeffs.len(), chart.dim());
        Form { chart: chart.clone(), ext: Ext::from_one_form(coeffs) }
    }

    pub fn degree(&self) -> usize {
        self.ext.degree
    }

    pub fn is_zero(&self) -> bool {
        self.ext.is_zero()
    }

    pub fn coeff(&self, idx: &[usize]) -> Expr {
        self.ext.coeff(idx)
    }

    /// Coefficient of `dx_i` in a 1-form, as a dense vector.
    pub fn components(&self) -> Vec<Expr> {
        (0..self.chart.dim()).map(|i| self.coeff(&[i])).collect()
    }

    pub fn add(&self, o: &Form) -> Form {
        same_chart(&self.chart, &o.chart);
        Form { chart: self.chart.clone(), ext: self.ext.add(&o.ext) }
    }

    pub fn sub(&self, o: &Form) -> Form {
        same_chart(&self.chart, &o.chart);
        Form { chart: self.chart.clone(), ext: self.ext.sub(&o.ext) }
    }

    pub fn neg(&self) -> Form {
        Form { chart: self.chart.clone(), ext: self.ext.neg() }
    }

    pub fn scale(&self, f: &Expr) -> Form {
        Form { chart: self.chart.clone(), ext: self.ext.scale(f) }
    }

    pub fn wedge(&self, o: &Form) -> Form {
        same_chart(&self.chart, &o.chart);
        Form { chart: self.chart.clone(), ext: self.ext.wedge(&o.ext) }
    }

    pub fn wedge_all(forms: &[&Form]) -> Form {
        let mut it = forms.iter();
        let first = (*it.next().expect("nonempty")).clone();
        it.fold(first, |acc, f| acc.wedge(f))
    }

    /// Exterior derivative, using total derivatives so jet symbols follow
    /// the chain rule.
    pub fn d(&self) -> Result<Form, Error> {
        let mut r = Ext::zero(self.degree() + 1);
        for (m, c) in &self.ext.terms {
            for (k, &s) in self.chart.coords.iter().enumerate() {
                if m & (1 << k) != 0 {
                    continue;
                }
                let dc = c.diff(s)?;
                if dc.is_zero() {
                    continue;
                }
                let below = (m & ((1u32 << k) - 1)).count_ones();
                r.push(m | (1 << k), if below % 2 == 1 { -dc } else { dc });
            }
        }
        Ok(Form { chart: self.chart.clone(), ext: r })
    }

    pub fn interior(&self, x: &VectorField) -> Form {
        same_chart(&self.chart, &x.chart);
        Form { chart: self.chart.clone(), ext: self.ext.interior(&x.comps) }
    }

    /// Value on a list of vector fields, `alpha(v1, .., vp)`.
    pub fn eval_on(&self, vs: &[&VectorField]) -> Expr {
        assert_eq!(vs.len(), self.degree());
        let mut f = self.clone();
        for v in vs {
            f = f.interior(v);
        }
        f.coeff(&[])
    }

    /// Lie derivative by Cartan's formula.
    pub fn lie(&self, x: &VectorField) -> Result<Form, Error> {
        let a = self.interior(x).d()?;
        let b = self.d()?.interior(x);
        Ok(a.add(&b))
    }

    pub fn map_coeffs<F: Fn(&Expr) -> Result<Expr, Error>>(&self, f: F) -> Result<Form, Error> {
        Ok(Form { chart: self.chart.clone(), ext: self.ext.map_coeffs(f)? })
    }

    pub fn subs(&self, map: &BTreeMap<Symbol, Expr>) -> Result<Form, Error> {
        self.map_coeffs(|c| Ok(c.subs(map)?))
    }

    /// Pullback along a map from `source` into this form's chart, given as
    /// the target coordinates expressed in source coordinates.
    pub fn pullback(&self, source: &Arc<Chart>, images: &[Expr]) -> Result<Form, Error> {
        assert_eq!(images.len(), self.chart.dim());
        let subs: BTreeMap<Symbol, Expr> = self.chart.coords.iter().copied().zip(images.iter().cloned()).collect();
        let diffs: Vec<Ext> = images
            .iter()
            .map(|y| Ok(Form::function(source, y.clone()).d()?.ext))
            .collect::<Result<_, Error>>()?;
        let coeffs = self.ext.map_coeffs(|c| Ok(c.subs(&subs)?))?;
        let mut ext = coeffs.substitute_basis(&diffs);
        ext.degree = self.degree();
        Ok(Form { chart: source.clone(), ext })
    }
}

#[derive(Clone, PartialEq)]
pub struct VectorField {
    pub chart: Arc<Chart>,
    pub comps: Vec<Expr>,
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField[{}](", self.chart.name)?;
        let mut first = true;
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*d/d{}", self.chart.coords[i])?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl VectorField {
    pub fn new(chart: &Arc<Chart>, comps: Vec<Expr>) -> Self {
        assert_eq!(comps.len(), chart.dim());
        VectorField { chart: chart.clone(), comps }
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        Self::new(chart, vec![Expr::zero(); chart.dim()])
    }

    /// The coordinate field `d/dx_i`.
    pub fn coord(chart: &Arc<Chart>, i: usize) -> Self {
        let mut v = Self::zero(chart);
        v.comps[i] = Expr::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Expr::is_zero)
    }

    /// Derivation `X(f)`.
    pub fn apply(&self, f: &Expr) -> Result<Expr, Error> {
        let mut acc = Expr::zero();
        for (c, &s) in self.comps.iter().zip(&self.chart.coords) {
            if c.is_zero() {
                continue;
            }
            let df = f.diff(s)?;
            if !df.is_zero() {
                acc = acc + c * &df;
            }
        }
        Ok(acc)
    }

    pub fn add(&self, o: &VectorField) -> VectorField {
        same_chart(&self.chart, &o.chart);
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &VectorField) -> VectorField {
        same_chart(&self.chart, &o.chart);
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, f: &Expr) -> VectorField {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().map(|c| c * f).collect() }
    }

    pub fn bracket(&self, o: &VectorField) -> Result<VectorField, Error> {
        same_chart(&self.chart, &o.chart);
        let comps = self
            .comps
            .iter()
            .zip(&o.comps)
            .map(|(xk, yk)| Ok(self.apply(yk)? - o.apply(xk)?))
            .collect::<Result<_, Error>>()?;
        Ok(VectorField { chart: self.chart.clone(), comps })
    }
}

/// Seed for the sample points of generic-rank computations.
const SAMPLE_SEED: u64 = 0x0067_656e_6572_6963;
const SAMPLE_POINTS: usize = 3;

/// Exact evaluations of a matrix of rational functions at seeded random
/// rational points, skipping points that hit a pole.
fn sampled(m: &[Vec<Expr>]) -> Vec<linalg::Matrix<BigRational>> {
    use rand::{Rng, SeedableRng};
    let mut syms: Vec<Symbol> = m.iter().flatten().flat_map(Expr::symbols).collect();
    syms.sort();
    syms.dedup();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut out = Vec::new();
    for _ in 0..8 * SAMPLE_POINTS {
        if out.len() == SAMPLE_POINTS {
            break;
        }
        let env: BTreeMap<Symbol, BigRational> = syms
            .iter()
            .map(|&s| {
                let num = rng.gen_range(-1_000_000i64..=1_000_000);
                let den = rng.gen_range(1i64..=1000);
                (s, BigRational::new(num.into(), den.into()))
            })
            .collect();
        let row = |r: &Vec<Expr>| r.iter().map(|e| e.eval(&env)).collect::<Result<Vec<_>, _>>();
        if let Ok(v) = m.iter().map(row).collect::<Result<Vec<_>, _>>() {
            out.push(v);
        }
    }
    out
}

/// Rows of `m` independent at a generic point, chosen at the sample point of
/// largest rank. The rank found is a lower bound for the generic rank and
/// equals it unless every sample lies on the degeneracy locus.
pub fn generic_independent_rows(m: &[Vec<Expr>]) -> Vec<usize> {
    if m.is_empty() {
        return Vec::new();
    }
    sampled(m)
        .iter()
        .map(|v| linalg::independent_subset(v))
        .max_by_key(Vec::len)
        .unwrap_or_else(|| linalg::independent_subset(&m.to_vec()))
}

/// Rank at a generic point of the span of the given fields.
pub fn generic_rank(vs: &[VectorField]) -> usize {
    let m: linalg::Matrix<Expr> = vs.iter().map(|v| v.comps.clone()).collect();
    generic_independent_rows(&m).len()
}

/// Rank at a generic point of the span of the given 1-forms.
pub fn generic_rank_forms(fs: &[Form]) -> usize {
    let m: linalg::Matrix<Expr> = fs.iter().map(|f| f.components()).collect();
    generic_independent_rows(&m).len()
}

/// A generically independent subset of the fields.
pub fn generic_basis(vs: &[VectorField]) -> Vec<VectorField> {
    let m: Vec<Vec<Expr>> = vs.iter().map(|v| v.comps.clone()).collect();
    generic_independent_rows(&m).into_iter().map(|i| vs[i].clone()).collect()
}

/// Growth vector `(rank D, rank D', rank D'', ..)` up to `depth` entries,
/// where each step adds the brackets of the original fields with the
/// previous step.
pub fn distribution_growth(d: &[VectorField], depth: usize) -> Result<Vec<usize>, Error> {
    assert!(!d.is_empty() && depth >= 1);
    let first = generic_basis(d);
    let mut current = first.clone();
    let mut out = vec![current.len()];
    for _ in 1..depth {
        let mut next = current.clone();
        for x in &first {
            for y in &current {
                let b = x.bracket(y)?;
                if !b.is_zero() {
                    next.push(b);
                }
            }
        }
        current = generic_basis(&next);
        out.push(current.len());
    }
    Ok(out)
}

/// Type of `x` with respect to the contact form `theta`: generic rank of
/// `theta, L_x theta, L_x^2 theta, L_x^3 theta`.
pub fn type_of(x: &VectorField, theta: &Form) -> Result<usize, Error> {
    if !theta.eval_on(&[x]).is_zero() {
        return Err(Error::Precondition("vector field is not in the kernel of the contact form".into()));
    }
    let mut fs = vec![theta.clone()];
    for _ in 0..3 {
        let next = fs.last().unwrap().lie(x)?;
        fs.push(next);
    }
    Ok(generic_rank_forms(&fs))
}

/// A coframe on a chart together with its dual frame.
#[derive(Clone, Debug)]
pub struct CoframeChart {
    pub chart: Arc<Chart>,
    pub forms: Vec<Form>,
    /// `matrix[i][k]` is the coefficient of `dx_k` in `forms[i]`.
    pub matrix: linalg::Matrix<Expr>,
    /// `inverse[k][j]` is the `k`-th component of the dual field `frame[j]`.
    pub inverse: linalg::Matrix<Expr>,
    pub frame: Vec<VectorField>,
    dx_images: Vec<Ext>,
}

impl CoframeChart {
    pub fn new(forms: Vec<Form>) -> Result<Self, Error> {
        let chart = forms.first().expect("nonempty coframe").chart.clone();
        let n = chart.dim();
        if forms.len() != n || forms.iter().any(|f| f.degree() != 1) {
            return Err(Error::Precondition("a coframe needs one 1-form per coordinate".into()));
        }
        let matrix: linalg::Matrix<Expr> = forms.iter().map(|f| f.components()).collect();
        let inverse = linalg::inverse(&matrix).ok_or(Error::Singular)?;
        let frame = (0..n)
            .map(|j| VectorField::new(&chart, (0..n).map(|k| inverse[k][j].clone()).collect()))
            .collect();
        let dx_images = (0..n).map(|k| Ext::from_one_form(&inverse[k])).collect();
        Ok(CoframeChart { chart, forms, matrix, inverse, frame, dx_images })
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// Coefficients of `alpha` in the coframe basis.
    pub fn expand(&self, alpha: &Form) -> Ext {
        same_chart(&self.chart, &alpha.chart);
        let mut e = alpha.ext.substitute_basis(&self.dx_images);
        e.degree = alpha.degree();
        e
    }

    /// Frame derivatives `(xi_0 f, .., xi_{n-1} f)`.
    pub fn derivatives(&self, f: &Expr) -> Result<Vec<Expr>, Error> {
        self.frame.iter().map(|x| x.apply(f)).collect()
    }

    /// Rebuilds a coordinate form from coframe coefficients.
    pub fn reconstruct(&self, e: &Ext) -> Form {
        let images: Vec<Ext> = self.forms.iter().map(|f| f.ext.clone()).collect();
        let mut ext = e.substitute_basis(&images);
        ext.degree = e.degree;
        Form { chart: self.chart.clone(), ext }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart5() -> Arc<Chart> {
        Chart::new("x", (0..5).map(Symbol::x).collect())
    }

    fn x(i: u32) -> Expr {
        Expr::sym(Symbol::x(i))
    }

    #[test]
    fn contact_form_derivative() {
        let c = chart5();
        let w0 = Form::dx(&c, 0).add(&Form::dx(&c, 4).scale(&x(1))).sub(&Form::dx(&c, 3).scale(&(x(2) * Expr::int(3))));
        let d = w0.d().unwrap();
        assert_eq!(d.coeff(&[1, 4]), Expr::one());
        assert_eq!(d.coeff(&[2, 3]), Expr::int(-3));
        assert_eq!(d.ext.terms.len(), 2);
    }

    #[test]
    fn brackets_of_coordinate_fields() {
        let c = chart5();
        let x1 = VectorField::coord(&c, 1);
        let mut x4 = VectorField::coord(&c, 4);
        x4.comps[0] = -x(1);
        let b = x1.bracket(&x4).unwrap();
        assert_eq!(b.comps[0], Expr::int(-1));
        assert!(b.comps[1..].iter().all(Expr::is_zero));
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), 1);
        assert_eq!(wedge_sign(0b10, 0b01), -1);
        assert_eq!(wedge_sign(0b11, 0b01), 0);
        assert_eq!(mask_of(&[2, 0, 1]), Some((0b111, 1)));
        assert_eq!(mask_of(&[1, 0]), Some((0b11, -1)));
    }

    #[test]
    fn expansion_round_trip() {
        let c = chart5();
        let t = x(3) * x(1);
        let forms = vec![
            Form::one_form(&c, &[Expr::one(), Expr::zero(), Expr::zero(), x(2) * Expr::int(-3), x(1)]),
            Form::one_form(&c, &[Expr::zero(), Expr::one(), t.clone() * Expr::int(3), t.clone() * t.clone() * Expr::int(3), t.pow(3).unwrap()]),
            Form::one_form(&c, &[Expr::zero(), Expr::zero(), Expr::one(), t.clone() * Expr::int(2), t.clone() * t.clone()]),
            Form::one_form(&c, &[Expr::zero(), Expr::zero(), Expr::zero(), Expr::one(), t.clone()]),
            Form::dx(&c, 4),
        ];
        let cf = CoframeChart::new(forms).unwrap();
        let alpha = cf.forms[2].d().unwrap();
        let e = cf.expand(&alpha);
        assert_eq!(cf.reconstruct(&e), alpha);
        let dx4 = cf.expand(&Form::dx(&c, 4));
        assert_eq!(dx4.terms.len(), 1);
        assert_eq!(dx4.coeff(&[4]), Expr::one());
    }

    #[test]
    fn growth_of_heisenberg_pair() {
        let c = Chart::new("xyz", vec![Symbol::x(0), Symbol::x(1), Symbol::x(2)]);
        let a = VectorField::coord(&c, 0);
        let mut b = VectorField::coord(&c, 1);
        b.comps[2] = x(0);
        assert_eq!(distribution_growth(&[a, b], 3).unwrap(), vec![2, 3, 3]);
    }
}
