//! Exact arithmetic in quantum tori with n-th roots of generators.
//!
//! A quantum torus presentation consists of an integer n ≥ 2, a list of N
//! generator names, and an N×N antisymmetric integer matrix P. The algebra is
//! generated by X_i^{±1/n} subject to
//!
//! ```text
//!   X_i^{m/n} X_j^{m'/n} = ω^{P_ij · m · m'} X_j^{m'/n} X_i^{m/n}
//! ```
//!
//! where ω = q^{1/n²}. Coefficients live in the ring of rational Laurent
//! polynomials in a formal half-power h with h² = ω (so q = h^{2n²}).
//! Elements are kept in a normal form: a sparse sum of monomials whose
//! letters are ordered by ascending generator index; exponents are stored as
//! integer numerators over the global denominator n.

use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Exact rational scalar.
pub type Rat = BigRational;

/// Errors raised by torus construction and arithmetic.
#[derive(Debug, Error)]
pub enum TorusError {
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("mixed torus presentations: {0}")]
    Mismatch(String),
    #[error("operation requires a monomial: {0}")]
    NotMonomial(String),
    #[error("deserialization error: {0}")]
    Deserialize(String),
    #[error("generator map is not a homomorphism: pairing of ({0}, {1}) is {2}, expected {3}")]
    NotHomomorphism(String, String, i64, i64),
}

/// Rational Laurent polynomial in the formal half-power h (h² = ω).
///
/// Stored sparsely as h-exponent → nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HLaurent {
    terms: BTreeMap<i64, Rat>,
}

impl HLaurent {
    pub fn zero() -> Self {
        HLaurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::h_pow(0)
    }

    /// The monomial h^k.
    pub fn h_pow(k: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(k, Rat::one());
        HLaurent { terms }
    }

    /// A constant rational.
    pub fn rational(r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(0, r);
        }
        HLaurent { terms }
    }

    pub fn integer(k: i64) -> Self {
        Self::rational(Rat::from_integer(BigInt::from(k)))
    }

    /// q^k in a torus with the given n, i.e. h^{2n²k}.
    pub fn q_pow(k: i64, n: i64) -> Self {
        Self::h_pow(2 * n * n * k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.terms.iter()
    }

    /// True if the only h-power present is h^0.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    /// The constant term as a rational, if the element is constant.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.get(&0).cloned()
        } else {
            None
        }
    }

    /// True if this is a single term r·h^k; returns (k, r).
    pub fn as_single(&self) -> Option<(i64, Rat)> {
        if self.terms.len() == 1 {
            let (k, r) = self.terms.iter().next().unwrap();
            Some((*k, r.clone()))
        } else {
            None
        }
    }

    /// Evaluate at h = 1 (the q = ω = 1 specialization).
    pub fn eval_at_one(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, r| acc + r)
    }

    /// Multiply by h^k (shift all exponents).
    pub fn shifted(&self, k: i64) -> Self {
        HLaurent { terms: self.terms.iter().map(|(e, r)| (e + k, r.clone())).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, r) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(Rat::zero);
            *entry += r;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        HLaurent { terms }
    }

    pub fn neg(&self) -> Self {
        HLaurent { terms: self.terms.iter().map(|(e, r)| (*e, -r.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i64, Rat> = BTreeMap::new();
        for (e1, r1) in &self.terms {
            for (e2, r2) in &other.terms {
                let e = e1 + e2;
                let entry = terms.entry(e).or_insert_with(Rat::zero);
                *entry += r1 * r2;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        HLaurent { terms }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        HLaurent { terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect() }
    }

    /// Multiplicative inverse, defined only for single terms r·h^k.
    pub fn inv(&self) -> Option<Self> {
        let (k, r) = self.as_single()?;
        if r.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        terms.insert(-k, Rat::one() / r);
        Some(HLaurent { terms })
    }
}

impl fmt::Display for HLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, r) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{}", r)?,
                1 => write!(f, "{}*h", r)?,
                _ => write!(f, "{}*h^{}", r, e)?,
            }
        }
        Ok(())
    }
}

/// A quantum torus presentation: n, generator names, antisymmetric Poisson
/// matrix. Identity of tori is by value, not reference.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuantumTorus {
    pub n: i64,
    pub names: Vec<String>,
    pub poisson: Vec<Vec<i64>>,
}

impl QuantumTorus {
    pub fn num_gens(&self) -> usize {
        self.names.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// The same generators with the zero Poisson matrix (the q = 1 layer).
    pub fn commutative_shadow(&self) -> Arc<QuantumTorus> {
        let k = self.num_gens();
        Arc::new(QuantumTorus {
            n: self.n,
            names: self.names.clone(),
            poisson: vec![vec![0; k]; k],
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.poisson.iter().all(|row| row.iter().all(|&p| p == 0))
    }

    /// ω-unit pairing of two exponent-numerator vectors:
    /// X^m X^{m'} = ω^{pairing(m, m')} X^{m'} X^m.
    pub fn pairing(&self, m: &[i64], m2: &[i64]) -> i64 {
        let mut s = 0i64;
        for (i, &mi) in m.iter().enumerate() {
            if mi == 0 {
                continue;
            }
            for (j, &mj) in m2.iter().enumerate() {
                if mj != 0 {
                    s += self.poisson[i][j] * mi * mj;
                }
            }
        }
        s
    }
}

/// Construct a torus presentation, validating the matrix shape and
/// antisymmetry and the uniqueness of generator names.
pub fn make_torus(
    n: i64,
    names: Vec<String>,
    poisson: Vec<Vec<i64>>,
) -> Result<Arc<QuantumTorus>, TorusError> {
    if n < 2 {
        return Err(TorusError::Presentation(format!("n must be >= 2, got {n}")));
    }
    let k = names.len();
    if poisson.len() != k || poisson.iter().any(|row| row.len() != k) {
        return Err(TorusError::Presentation(format!(
            "poisson matrix must be {k}x{k} to match {k} generators"
        )));
    }
    for i in 0..k {
        for j in 0..k {
            if poisson[i][j] != -poisson[j][i] {
                return Err(TorusError::Presentation(format!(
                    "poisson matrix is not antisymmetric at ({i},{j})"
                )));
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    for name in &names {
        if !seen.insert(name.clone()) {
            return Err(TorusError::Presentation(format!("duplicate generator name {name}")));
        }
    }
    Ok(Arc::new(QuantumTorus { n, names, poisson }))
}

/// An element of a quantum torus in normal form: a sparse sum of monomials
/// X^m (letters ordered by ascending generator index) with `HLaurent`
/// coefficients. Exponent vectors store numerators over the denominator n.
#[derive(Clone, Debug)]
pub struct TorusElement {
    pub torus: Arc<QuantumTorus>,
    terms: BTreeMap<Vec<i64>, HLaurent>,
}

impl PartialEq for TorusElement {
    fn eq(&self, other: &Self) -> bool {
        *self.torus == *other.torus && self.terms == other.terms
    }
}
impl Eq for TorusElement {}

impl TorusElement {
    pub fn zero(t: &Arc<QuantumTorus>) -> Self {
        TorusElement { torus: t.clone(), terms: BTreeMap::new() }
    }

    pub fn one(t: &Arc<QuantumTorus>) -> Self {
        Self::scalar(t, HLaurent::one())
    }

    pub fn scalar(t: &Arc<QuantumTorus>, c: HLaurent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; t.num_gens()], c);
        }
        TorusElement { torus: t.clone(), terms }
    }

    pub fn rational(t: &Arc<QuantumTorus>, r: Rat) -> Self {
        Self::scalar(t, HLaurent::rational(r))
    }

    /// Single-term element c·X^m with numerator vector `exps`.
    pub fn monomial(
        t: &Arc<QuantumTorus>,
        exps: Vec<i64>,
        coeff: HLaurent,
    ) -> Result<Self, TorusError> {
        if exps.len() != t.num_gens() {
            return Err(TorusError::Mismatch(format!(
                "exponent vector length {} does not match generator count {}",
                exps.len(),
                t.num_gens()
            )));
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Ok(TorusElement { torus: t.clone(), terms })
    }

    /// The full generator X_i (exponent 1 = numerator n).
    pub fn generator(t: &Arc<QuantumTorus>, i: usize) -> Self {
        Self::generator_root(t, i, t.n)
    }

    /// The fractional power X_i^{numer/n}.
    pub fn generator_root(t: &Arc<QuantumTorus>, i: usize, numer: i64) -> Self {
        let mut exps = vec![0; t.num_gens()];
        exps[i] = numer;
        Self::monomial(t, exps, HLaurent::one()).expect("generator index in range")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &HLaurent)> {
        self.terms.iter()
    }

    /// The single term of the element, if it is a monomial.
    pub fn as_monomial(&self) -> Option<(&Vec<i64>, &HLaurent)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn assert_same_torus(&self, other: &Self, op: &str) {
        assert!(
            *self.torus == *other.torus,
            "torus presentation mismatch in {op}: {:?} vs {:?}",
            self.torus.names,
            other.torus.names
        );
    }

    fn insert_term(terms: &mut BTreeMap<Vec<i64>, HLaurent>, exps: Vec<i64>, c: HLaurent) {
        if c.is_zero() {
            return;
        }
        match terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_torus(other, "add");
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), c.clone());
        }
        TorusElement { torus: self.torus.clone(), terms }
    }

    pub fn neg(&self) -> Self {
        TorusElement {
            torus: self.torus.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Normal-ordered product. Merging the normal-ordered monomials X^m·X^{m'}
    /// moves each letter of m' left past the higher-indexed letters of m,
    /// contributing ω^{Σ_{i>j} P_ij m_i m'_j} — always an even h-power.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_torus(other, "mul");
        let t = &self.torus;
        let k = t.num_gens();
        let mut terms: BTreeMap<Vec<i64>, HLaurent> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut shift = 0i64;
                for i in 0..k {
                    if m[i] == 0 {
                        continue;
                    }
                    for j in 0..i {
                        if m2[j] != 0 {
                            shift += t.poisson[i][j] * m[i] * m2[j];
                        }
                    }
                }
                let exps: Vec<i64> = m.iter().zip(m2).map(|(a, b)| a + b).collect();
                // 2·shift: reorderings only ever produce even h-powers.
                let c = c.mul(c2).shifted(2 * shift);
                Self::insert_term(&mut terms, exps, c);
            }
        }
        TorusElement { torus: self.torus.clone(), terms }
    }

    pub fn scale(&self, c: &HLaurent) -> Self {
        TorusElement {
            torus: self.torus.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c0)| {
                    let c1 = c0.mul(c);
                    if c1.is_zero() {
                        None
                    } else {
                        Some((m.clone(), c1))
                    }
                })
                .collect(),
        }
    }

    /// Inverse of a monomial c·X^m (c must be a single term r·h^k).
    pub fn inv_monomial(&self) -> Result<Self, TorusError> {
        let (m, c) = self
            .as_monomial()
            .ok_or_else(|| TorusError::NotMonomial(format!("{self}")))?;
        let cinv = c
            .inv()
            .ok_or_else(|| TorusError::NotMonomial(format!("coefficient {c} not invertible")))?;
        let t = &self.torus;
        let minv: Vec<i64> = m.iter().map(|&e| -e).collect();
        // X^m · X^{-m} = h^{2s}, s = Σ_{i>j} P_ij m_i (−m_j); cancel it.
        let k = t.num_gens();
        let mut s = 0i64;
        for i in 0..k {
            if m[i] == 0 {
                continue;
            }
            for j in 0..i {
                if m[j] != 0 {
                    s += t.poisson[i][j] * m[i] * (-m[j]);
                }
            }
        }
        Self::monomial(t, minv, cinv.shifted(-2 * s))
    }

    /// Integer power of a monomial: (c·X^m)^p = c^p · h^{−p(p−1)A} · X^{pm}
    /// with A = Σ_{i<j} P_ij m_i m_j.
    /// Rational power t is allowed when the coefficient is exactly 1 and all
    /// resulting exponents and the h-power are integral.
    pub fn pow_monomial(&self, num: i64, den: i64) -> Result<Self, TorusError> {
        assert!(den > 0, "power denominator must be positive");
        let (m, c) = self
            .as_monomial()
            .ok_or_else(|| TorusError::NotMonomial(format!("{self}")))?;
        let t = &self.torus;
        let k = t.num_gens();
        let mut a = 0i64;
        for i in 0..k {
            if m[i] == 0 {
                continue;
            }
            for j in (i + 1)..k {
                if m[j] != 0 {
                    a += t.poisson[i][j] * m[i] * m[j];
                }
            }
        }
        // h-exponent: −t(t−1)·A with t = num/den; must be integral.
        let hnum = -(num * (num - den)) * a;
        if hnum % (den * den) != 0 {
            return Err(TorusError::NotMonomial(format!(
                "fractional h-power in monomial power {num}/{den}"
            )));
        }
        let hshift = hnum / (den * den);
        let mut exps = Vec::with_capacity(k);
        for &e in m {
            if (e * num) % den != 0 {
                return Err(TorusError::NotMonomial(format!(
                    "fractional exponent in monomial power {num}/{den}"
                )));
            }
            exps.push(e * num / den);
        }
        let coeff = if num % den == 0 {
            let p = num / den;
            let mut acc = HLaurent::one();
            if p >= 0 {
                for _ in 0..p {
                    acc = acc.mul(c);
                }
            } else {
                let cinv = c.inv().ok_or_else(|| {
                    TorusError::NotMonomial(format!("coefficient {c} not invertible"))
                })?;
                for _ in 0..(-p) {
                    acc = acc.mul(&cinv);
                }
            }
            acc
        } else {
            // Fractional powers require a single-term coefficient ±h^k with
            // the sign and h-power compatible; we only support coefficient 1.
            if *c != HLaurent::one() {
                return Err(TorusError::NotMonomial(format!(
                    "fractional power of monomial with coefficient {c}"
                )));
            }
            HLaurent::one()
        };
        Self::monomial(t, exps, coeff.shifted(hshift))
    }

    /// Weyl (symmetric) quantum ordering of a word of letters
    /// (generator index, exponent numerator):
    /// [w] = h^{−Σ_{a<b} P_{i_a i_b} m_a m_b} · (ordered product of letters).
    /// The result is independent of the order of the letters.
    pub fn weyl_word(t: &Arc<QuantumTorus>, word: &[(usize, i64)]) -> Self {
        let mut pre = 0i64;
        for a in 0..word.len() {
            for b in (a + 1)..word.len() {
                pre += t.poisson[word[a].0][word[b].0] * word[a].1 * word[b].1;
            }
        }
        let mut acc = Self::scalar(t, HLaurent::h_pow(-pre));
        for &(i, m) in word {
            acc = acc.mul(&Self::generator_root(t, i, m));
        }
        acc
    }

    /// Weyl ordering of the ascending-ordered monomial with numerators `exps`:
    /// [X^m] = h^{−Σ_{i<j} P_ij m_i m_j} X^m, scaled by `coeff`.
    pub fn weyl_of_exps(t: &Arc<QuantumTorus>, exps: &[i64], coeff: &HLaurent) -> Self {
        let k = t.num_gens();
        let mut pre = 0i64;
        for i in 0..k {
            if exps[i] == 0 {
                continue;
            }
            for j in (i + 1)..k {
                if exps[j] != 0 {
                    pre += t.poisson[i][j] * exps[i] * exps[j];
                }
            }
        }
        Self::monomial(t, exps.to_vec(), coeff.shifted(-pre)).expect("matching length")
    }

    /// Entrywise Weyl lift of an element of the commutative shadow into the
    /// quantum torus `t` (same generators): each commutative term c·X^m maps
    /// to c·[X^m].
    pub fn weyl_from_commutative(t: &Arc<QuantumTorus>, u: &TorusElement) -> Self {
        assert_eq!(
            u.torus.names, t.names,
            "weyl_from_commutative requires matching generator lists"
        );
        assert!(u.torus.is_commutative(), "source of weyl_from_commutative must be commutative");
        let mut acc = Self::zero(t);
        for (m, c) in &u.terms {
            acc = acc.add(&Self::weyl_of_exps(t, m, c));
        }
        acc
    }

    /// The q = ω = 1 specialization: h ↦ 1, target is the commutative shadow.
    pub fn specialize_commutative(&self) -> Self {
        let shadow = self.torus.commutative_shadow();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let r = c.eval_at_one();
            if !r.is_zero() {
                Self::insert_term(&mut terms, m.clone(), HLaurent::rational(r));
            }
        }
        TorusElement { torus: shadow, terms }
    }

    /// Evaluate a commutative element with integer exponents at rational
    /// generator values. Errors on fractional exponents or h-dependence.
    pub fn eval_rational(&self, values: &[Rat]) -> Result<Rat, TorusError> {
        let n = self.torus.n;
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let r = c.as_rational().ok_or_else(|| {
                TorusError::NotMonomial(format!("coefficient {c} is not h-free"))
            })?;
            let mut term = r;
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e % n != 0 {
                    return Err(TorusError::NotMonomial(format!(
                        "fractional exponent {e}/{n} cannot be evaluated rationally"
                    )));
                }
                let p = e / n;
                let v = &values[i];
                if v.is_zero() {
                    return Err(TorusError::NotMonomial("evaluation at zero".into()));
                }
                let mut pw = Rat::one();
                for _ in 0..p.abs() {
                    pw *= v;
                }
                if p < 0 {
                    pw = Rat::one() / pw;
                }
                term *= pw;
            }
            acc += term;
        }
        Ok(acc)
    }

    /// JSON serialization per the external interface:
    /// `{"terms":[{"h_pow":k,"coeff":"p/q","exps":{"name":numer}}],"n":n}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut jterms = Vec::new();
        for (m, c) in &self.terms {
            for (k, r) in c.terms() {
                let mut exps = serde_json::Map::new();
                for (i, &e) in m.iter().enumerate() {
                    if e != 0 {
                        exps.insert(self.torus.names[i].clone(), serde_json::json!(e));
                    }
                }
                jterms.push(serde_json::json!({
                    "h_pow": k,
                    "coeff": r.to_string(),
                    "exps": serde_json::Value::Object(exps),
                }));
            }
        }
        serde_json::json!({ "terms": jterms, "n": self.torus.n })
    }

    /// Deserialize against a known torus presentation; re-normalizes
    /// (collects like terms) and rejects unknown generator names.
    pub fn from_json(
        t: &Arc<QuantumTorus>,
        v: &serde_json::Value,
    ) -> Result<Self, TorusError> {
        let n = v
            .get("n")
            .and_then(|x| x.as_i64())
            .ok_or_else(|| TorusError::Deserialize("missing n".into()))?;
        if n != t.n {
            return Err(TorusError::Deserialize(format!("n mismatch: {} vs {}", n, t.n)));
        }
        let jterms = v
            .get("terms")
            .and_then(|x| x.as_array())
            .ok_or_else(|| TorusError::Deserialize("missing terms".into()))?;
        let mut acc = Self::zero(t);
        for jt in jterms {
            let h_pow = jt
                .get("h_pow")
                .and_then(|x| x.as_i64())
                .ok_or_else(|| TorusError::Deserialize("missing h_pow".into()))?;
            let coeff_s = jt
                .get("coeff")
                .and_then(|x| x.as_str())
                .ok_or_else(|| TorusError::Deserialize("missing coeff".into()))?;
            let r: Rat = coeff_s
                .parse()
                .map_err(|e| TorusError::Deserialize(format!("bad rational {coeff_s}: {e}")))?;
            let mut exps = vec![0i64; t.num_gens()];
            if let Some(obj) = jt.get("exps").and_then(|x| x.as_object()) {
                for (name, val) in obj {
                    let i = t.gen_index(name).ok_or_else(|| {
                        TorusError::Deserialize(format!("unknown generator {name}"))
                    })?;
                    exps[i] = val
                        .as_i64()
                        .ok_or_else(|| TorusError::Deserialize(format!("bad exponent for {name}")))?;
                }
            }
            let term = Self::monomial(t, exps, HLaurent::rational(r).shifted(h_pow))?;
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.torus.n;
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == n {
                    write!(f, "·{}", self.torus.names[i])?;
                } else {
                    write!(f, "·{}^({}/{})", self.torus.names[i], e, n)?;
                }
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &TorusElement {
    type Output = TorusElement;
    fn add(self, rhs: &TorusElement) -> TorusElement {
        TorusElement::add(self, rhs)
    }
}
impl std::ops::Sub for &TorusElement {
    type Output = TorusElement;
    fn sub(self, rhs: &TorusElement) -> TorusElement {
        TorusElement::sub(self, rhs)
    }
}
impl std::ops::Mul for &TorusElement {
    type Output = TorusElement;
    fn mul(self, rhs: &TorusElement) -> TorusElement {
        TorusElement::mul(self, rhs)
    }
}
impl std::ops::Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        TorusElement::neg(self)
    }
}

/// Tensor product of torus presentations sharing the same n: generator lists
/// are concatenated with a `#i` factor suffix (1-based), and the Poisson
/// matrix is block diagonal, so generators of distinct factors commute.
pub struct TensorTorus {
    pub torus: Arc<QuantumTorus>,
    pub offsets: Vec<usize>,
    pub factors: Vec<Arc<QuantumTorus>>,
}

pub fn tensor(factors: &[Arc<QuantumTorus>]) -> Result<TensorTorus, TorusError> {
    if factors.is_empty() {
        return Err(TorusError::Presentation("tensor of zero factors".into()));
    }
    let n = factors[0].n;
    if factors.iter().any(|t| t.n != n) {
        return Err(TorusError::Mismatch("tensor factors must share the same n".into()));
    }
    let mut names = Vec::new();
    let mut offsets = Vec::new();
    for (idx, t) in factors.iter().enumerate() {
        offsets.push(names.len());
        for name in &t.names {
            names.push(format!("{}#{}", name, idx + 1));
        }
    }
    let total = names.len();
    let mut poisson = vec![vec![0i64; total]; total];
    for (idx, t) in factors.iter().enumerate() {
        let off = offsets[idx];
        let k = t.num_gens();
        for i in 0..k {
            for j in 0..k {
                poisson[off + i][off + j] = t.poisson[i][j];
            }
        }
    }
    let torus = make_torus(n, names, poisson)?;
    Ok(TensorTorus { torus, offsets, factors: factors.to_vec() })
}

impl TensorTorus {
    /// Inject an element of factor `idx` into the tensor torus.
    pub fn inject(&self, idx: usize, u: &TorusElement) -> TorusElement {
        assert!(
            *u.torus == *self.factors[idx],
            "inject: element does not belong to factor {idx}"
        );
        let off = self.offsets[idx];
        let total = self.torus.num_gens();
        let mut acc = TorusElement::zero(&self.torus);
        for (m, c) in u.terms() {
            let mut exps = vec![0i64; total];
            exps[off..off + m.len()].copy_from_slice(m);
            acc = acc.add(&TorusElement::monomial(&self.torus, exps, c.clone()).unwrap());
        }
        acc
    }
}

/// A homomorphism of quantum tori determined by monomial images of the full
/// generators. Images must be single monomials with coefficient 1; images of
/// n-th roots scale exponents by 1/n.
pub struct GeneratorMap {
    pub src: Arc<QuantumTorus>,
    pub dst: Arc<QuantumTorus>,
    pub images: Vec<TorusElement>,
}

impl GeneratorMap {
    pub fn new(
        src: Arc<QuantumTorus>,
        dst: Arc<QuantumTorus>,
        images: Vec<TorusElement>,
    ) -> Result<Self, TorusError> {
        if images.len() != src.num_gens() {
            return Err(TorusError::Presentation(format!(
                "need {} images, got {}",
                src.num_gens(),
                images.len()
            )));
        }
        for (i, u) in images.iter().enumerate() {
            if *u.torus != *dst {
                return Err(TorusError::Mismatch(format!(
                    "image of {} lives in the wrong torus",
                    src.names[i]
                )));
            }
            let (_, c) = u.as_monomial().ok_or_else(|| {
                TorusError::NotMonomial(format!("image of {} is not a monomial", src.names[i]))
            })?;
            if *c != HLaurent::one() {
                return Err(TorusError::NotMonomial(format!(
                    "image of {} has coefficient {c}, expected 1",
                    src.names[i]
                )));
            }
        }
        Ok(GeneratorMap { src, dst, images })
    }

    /// Homomorphism condition for monomial images: for every generator pair,
    /// pairing(image_i, image_j) = n² · P_src(i,j) in ω-units.
    pub fn validate(&self) -> Result<(), TorusError> {
        let n = self.src.n;
        for i in 0..self.src.num_gens() {
            let (mi, _) = self.images[i].as_monomial().unwrap();
            for j in 0..self.src.num_gens() {
                let (mj, _) = self.images[j].as_monomial().unwrap();
                let got = self.dst.pairing(mi, mj);
                let expected = n * n * self.src.poisson[i][j];
                if got != expected {
                    return Err(TorusError::NotHomomorphism(
                        self.src.names[i].clone(),
                        self.src.names[j].clone(),
                        got,
                        expected,
                    ));
                }
            }
        }
        Ok(())
    }

    /// Apply to an arbitrary element: each normal-ordered term c·X^m maps to
    /// c · ∏_i image_i^{m_i/n} (ascending order).
    pub fn apply(&self, u: &TorusElement) -> Result<TorusElement, TorusError> {
        assert!(*u.torus == *self.src, "apply: element not in the source torus");
        let n = self.src.n;
        let mut acc = TorusElement::zero(&self.dst);
        for (m, c) in u.terms() {
            let mut term = TorusElement::scalar(&self.dst, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = self.images[i].pow_monomial(e, n)?;
                term = term.mul(&factor);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple_torus() -> Arc<QuantumTorus> {
        // Two generators with pairing 2 in ω-units per numerator product:
        // u v = ω^{2 n²} v u = q² v u for full generators.
        make_torus(
            2,
            vec!["z1".into(), "z1'".into()],
            vec![vec![0, 2], vec![-2, 0]],
        )
        .unwrap()
    }

    #[test]
    fn make_torus_rejects_non_antisymmetric() {
        let err = make_torus(2, vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 0]]);
        assert!(err.is_err());
    }

    #[test]
    fn monomial_inverse_cancels() {
        let t = simple_torus();
        let u = TorusElement::monomial(&t, vec![3, -5], HLaurent::h_pow(4).scale(&Rat::new(BigInt::from(2), BigInt::from(3)))).unwrap();
        let inv = u.inv_monomial().unwrap();
        assert_eq!(u.mul(&inv), TorusElement::one(&t));
        assert_eq!(inv.mul(&u), TorusElement::one(&t));
    }

    #[test]
    fn commutation_matches_pairing() {
        let t = simple_torus();
        let u = TorusElement::generator(&t, 0);
        let v = TorusElement::generator(&t, 1);
        // v·u = ω^{pairing(v,u)} u·v with pairing = P_10·n·n = −2·4 = −8.
        let lhs = v.mul(&u);
        let rhs = u.mul(&v).scale(&HLaurent::h_pow(2 * t.pairing(&[0, 2], &[2, 0])));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn weyl_word_is_order_invariant() {
        let t = simple_torus();
        let w1 = TorusElement::weyl_word(&t, &[(0, 1), (1, -1)]);
        let w2 = TorusElement::weyl_word(&t, &[(1, -1), (0, 1)]);
        assert_eq!(w1, w2);
    }

    #[test]
    fn pow_monomial_group_law() {
        let t = simple_torus();
        let u = TorusElement::monomial(&t, vec![2, 2], HLaurent::one()).unwrap();
        let sq = u.pow_monomial(2, 1).unwrap();
        assert_eq!(sq, u.mul(&u));
        let half = u.pow_monomial(1, 2).unwrap();
        assert_eq!(half.mul(&half), u);
    }

    #[test]
    fn json_round_trip() {
        let t = simple_torus();
        let u = TorusElement::weyl_word(&t, &[(0, 1), (1, -1)])
            .add(&TorusElement::rational(&t, Rat::new(BigInt::from(3), BigInt::from(7))));
        let v = TorusElement::from_json(&t, &u.to_json()).unwrap();
        assert_eq!(u, v);
    }

    #[test]
    fn json_rejects_unknown_generator() {
        let t = simple_torus();
        let bad = serde_json::json!({
            "n": 2,
            "terms": [{"h_pow": 0, "coeff": "1", "exps": {"nope": 1}}],
        });
        assert!(TorusElement::from_json(&t, &bad).is_err());
    }

    #[test]
    fn tensor_factors_commute() {
        let t = simple_torus();
        let tt = tensor(&[t.clone(), t.clone()]).unwrap();
        let a = tt.inject(0, &TorusElement::generator(&t, 0));
        let b = tt.inject(1, &TorusElement::generator(&t, 1));
        assert_eq!(a.mul(&b), b.mul(&a));
    }
}
