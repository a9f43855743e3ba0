//! Finitely presented graded-commutative algebras with Koszul signs.
//!
//! A [`RingModel`] lists generators with multi-degrees (one component per
//! tensor factor, so a product ring truncates per factor), rewrite relations
//! sending a pair of generators to an element, and an optional integration
//! functional on top-degree monomials. Odd-degree generators anticommute and
//! square to zero; rewriting is checked for confluence on all short
//! monomials at construction time.

use crate::error::Error;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    /// Multi-degree; the Koszul parity is the total degree mod 2.
    pub degree: Vec<i64>,
}

impl Generator {
    pub fn parity(&self) -> u8 {
        (self.degree.iter().sum::<i64>() % 2) as u8
    }
}

/// Sorted list of generator indices with repetition.
pub type Monomial = Vec<usize>;

#[derive(Clone)]
pub struct RingModel {
    generators: Vec<Generator>,
    /// Rewrite rules: the product g_a g_b (a <= b, as an adjacent pair in a
    /// sorted monomial) is replaced by the right-hand side.
    relations: BTreeMap<(usize, usize), GradedElement>,
    /// Componentwise truncation: any monomial exceeding this in some degree
    /// component is zero.
    top_degree: Vec<i64>,
    /// Integration functional on top-degree monomials.
    integral: BTreeMap<Monomial, Scalar>,
}

impl RingModel {
    pub fn new(
        generators: Vec<Generator>,
        relations: Vec<((usize, usize), GradedElement)>,
        top_degree: Vec<i64>,
    ) -> Result<Self, Error> {
        let mut rel = BTreeMap::new();
        for ((a, b), rhs) in relations {
            let key = if a <= b { (a, b) } else { (b, a) };
            rel.insert(key, rhs);
        }
        let model = RingModel { generators, relations: rel, top_degree, integral: BTreeMap::new() };
        model.check_confluence()?;
        Ok(model)
    }

    pub fn with_integral(mut self, pairs: Vec<(Monomial, Scalar)>) -> Self {
        self.integral = pairs.into_iter().collect();
        self
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn generator_index(&self, name: &str) -> usize {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .unwrap_or_else(|| panic!("no generator named {name}"))
    }

    /// The generator as an element.
    pub fn gen_elt(&self, name: &str) -> GradedElement {
        GradedElement::monomial(vec![self.generator_index(name)], Scalar::one())
    }

    pub fn one(&self) -> GradedElement {
        GradedElement::monomial(Vec::new(), Scalar::one())
    }

    pub fn degree_of(&self, m: &Monomial) -> Vec<i64> {
        let mut d = vec![0; self.top_degree.len()];
        for &i in m {
            for (k, v) in self.generators[i].degree.iter().enumerate() {
                d[k] += v;
            }
        }
        d
    }

    pub fn total_degree_of(&self, m: &Monomial) -> i64 {
        self.degree_of(m).iter().sum()
    }

    fn exceeds_top(&self, m: &Monomial) -> bool {
        self.degree_of(m).iter().zip(&self.top_degree).any(|(d, t)| d > t)
    }

    /// Normal form of a raw (unsorted, unreduced) word with a sign already
    /// attached; returns the fully reduced element.
    fn normalize_word(&self, word: &[usize], coeff: &Scalar) -> GradedElement {
        if coeff.is_zero() {
            return GradedElement::zero();
        }
        // insertion sort tracking Koszul signs
        let mut w = word.to_vec();
        let mut sign_flips = 0usize;
        for i in 1..w.len() {
            let mut j = i;
            while j > 0 && w[j - 1] > w[j] {
                if self.generators[w[j - 1]].parity() == 1 && self.generators[w[j]].parity() == 1 {
                    sign_flips += 1;
                }
                w.swap(j - 1, j);
                j -= 1;
            }
        }
        let mut c = coeff.clone();
        if sign_flips % 2 == 1 {
            c = -c;
        }
        // odd generators square to zero
        for k in 1..w.len() {
            if w[k] == w[k - 1] && self.generators[w[k]].parity() == 1 {
                return GradedElement::zero();
            }
        }
        if self.exceeds_top(&w) {
            return GradedElement::zero();
        }
        // apply the first matching rewrite rule, then recurse
        for p in 0..w.len() {
            for q in p + 1..w.len() {
                let key = (w[p], w[q]);
                if let Some(rhs) = self.relations.get(&key) {
                    // move w[q] next to w[p], collecting Koszul signs
                    let mut sign = Scalar::one();
                    let moved_parity = self.generators[w[q]].parity();
                    for r in (p + 1)..q {
                        if moved_parity == 1 && self.generators[w[r]].parity() == 1 {
                            sign = -sign;
                        }
                    }
                    let mut rest: Monomial = Vec::with_capacity(w.len() - 2);
                    rest.extend_from_slice(&w[..p]);
                    rest.extend_from_slice(&w[p + 1..q]);
                    rest.extend_from_slice(&w[q + 1..]);
                    // result = c * sign * prefix-rest * rhs (rhs slots where
                    // the pair sat; re-normalization handles ordering)
                    let mut acc = GradedElement::zero();
                    for (rm, rc) in &rhs.terms {
                        let mut new_word = Vec::with_capacity(rest.len() + rm.len());
                        new_word.extend_from_slice(&w[..p]);
                        new_word.extend_from_slice(rm);
                        new_word.extend_from_slice(&w[p + 1..q]);
                        new_word.extend_from_slice(&w[q + 1..]);
                        let contrib = self.normalize_word(&new_word, &(&(&c * &sign) * rc));
                        acc = acc.add(&contrib);
                    }
                    return acc;
                }
            }
        }
        GradedElement::monomial(w, c)
    }

    /// Exhaustive small-monomial confluence test: every word of length <= 3
    /// must reduce to the same normal form regardless of rewrite order.
    fn check_confluence(&self) -> Result<(), Error> {
        let n = self.generators.len();
        let words: Vec<Vec<usize>> = {
            let mut ws = Vec::new();
            for a in 0..n {
                ws.push(vec![a]);
                for b in 0..n {
                    ws.push(vec![a, b]);
                    for c in 0..n {
                        ws.push(vec![a, b, c]);
                    }
                }
            }
            ws
        };
        for w in words {
            let reference = self.normalize_word(&w, &Scalar::one());
            for alt in self.all_one_step_reductions(&w) {
                if alt != reference {
                    return Err(Error::Internal(format!(
                        "rewrite system not confluent on word {w:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Every element obtainable by applying one applicable rule (at any
    /// position) first, then fully normalizing.
    fn all_one_step_reductions(&self, word: &[usize]) -> Vec<GradedElement> {
        let mut out = Vec::new();
        for p in 0..word.len() {
            for q in 0..word.len() {
                if p == q {
                    continue;
                }
                let (a, b) = (word[p], word[q]);
                let key = if a <= b { (a, b) } else { (b, a) };
                if let Some(rhs) = self.relations.get(&key) {
                    // replace positions p, q by the rhs at position min(p,q),
                    // with the Koszul sign of first moving the two together
                    let (lo, hi) = if p < q { (p, q) } else { (q, p) };
                    let mut sign = Scalar::one();
                    let moved_parity = self.generators[word[hi]].parity();
                    for r in (lo + 1)..hi {
                        if moved_parity == 1 && self.generators[word[r]].parity() == 1 {
                            sign = -sign;
                        }
                    }
                    // if the pair is reversed relative to the rule key, the
                    // rule for (a,b) with a<=b applies to g_a g_b; swapping
                    // two odd generators flips the sign
                    let mut swap_sign = Scalar::one();
                    if word[lo] > word[hi]
                        && self.generators[word[lo]].parity() == 1
                        && self.generators[word[hi]].parity() == 1
                    {
                        swap_sign = -swap_sign;
                    }
                    let mut acc = GradedElement::zero();
                    for (rm, rc) in &rhs.terms {
                        let mut new_word = Vec::new();
                        new_word.extend_from_slice(&word[..lo]);
                        new_word.extend_from_slice(rm);
                        new_word.extend_from_slice(&word[lo + 1..hi]);
                        new_word.extend_from_slice(&word[hi + 1..]);
                        let c = &(&sign * &swap_sign) * rc;
                        acc = acc.add(&self.normalize_word(&new_word, &c));
                    }
                    out.push(acc);
                }
            }
        }
        out
    }

    pub fn integral_of(&self, el: &GradedElement) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &el.terms {
            if let Some(v) = self.integral.get(m) {
                acc = &acc + &(c * v);
            }
        }
        acc
    }

    pub fn display(&self, el: &GradedElement) -> String {
        if el.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &el.terms {
            let mono = if m.is_empty() {
                "1".to_string()
            } else {
                let mut s = String::new();
                let mut i = 0;
                while i < m.len() {
                    let mut j = i;
                    while j < m.len() && m[j] == m[i] {
                        j += 1;
                    }
                    if !s.is_empty() {
                        s.push('*');
                    }
                    s.push_str(&self.generators[m[i]].name);
                    if j - i > 1 {
                        s.push_str(&format!("^{}", j - i));
                    }
                    i = j;
                }
                s
            };
            parts.push(format!("({c})*{mono}"));
        }
        parts.join(" + ")
    }
}

/// Formal sum of coefficient-monomial pairs in canonical sorted order.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl GradedElement {
    pub fn zero() -> Self {
        GradedElement { terms: BTreeMap::new() }
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        GradedElement { terms }
    }

    pub fn constant(c: Scalar) -> Self {
        GradedElement::monomial(Vec::new(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, rhs: &GradedElement) -> GradedElement {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let e = terms.entry(m.clone()).or_insert_with(Scalar::zero);
            *e = &*e + c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        GradedElement { terms }
    }

    pub fn sub(&self, rhs: &GradedElement) -> GradedElement {
        self.add(&rhs.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> GradedElement {
        if s.is_zero() {
            return GradedElement::zero();
        }
        GradedElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, rhs: &GradedElement, model: &RingModel) -> GradedElement {
        let mut acc = GradedElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mut word = m1.clone();
                word.extend_from_slice(m2);
                acc = acc.add(&model.normalize_word(&word, &(c1 * c2)));
            }
        }
        acc
    }

    pub fn pow(&self, e: usize, model: &RingModel) -> GradedElement {
        let mut acc = model.one();
        for _ in 0..e {
            acc = acc.mul(self, model);
        }
        acc
    }

    /// Homogeneous part of the given total degree.
    pub fn component(&self, total_degree: i64, model: &RingModel) -> GradedElement {
        GradedElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| model.total_degree_of(m) == total_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True if every monomial has the same total degree.
    pub fn is_homogeneous(&self, model: &RingModel) -> bool {
        let mut degs = self.terms.keys().map(|m| model.total_degree_of(m));
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedElement({} terms)", self.terms.len())
    }
}

/// The tensor model for a genus-2 moduli computation: a free M-side on
/// alpha (deg 2), beta (deg 4), psi_1..psi_4 (deg 3), tensored with the
/// curve side e_1..e_4 (deg 1), f (deg 2) subject to e_i e_(i+2) = -f and
/// all other distinct products zero. Truncated at M-degree 6 and C-degree 2.
pub fn tensor_model_genus2() -> RingModel {
    let mut gens = vec![
        Generator { name: "alpha".into(), degree: vec![2, 0] },
        Generator { name: "beta".into(), degree: vec![4, 0] },
    ];
    for i in 1..=4 {
        gens.push(Generator { name: format!("psi{i}"), degree: vec![3, 0] });
    }
    for i in 1..=4 {
        gens.push(Generator { name: format!("e{i}"), degree: vec![0, 1] });
    }
    gens.push(Generator { name: "f".into(), degree: vec![0, 2] });
    let e = |i: usize| 6 + i; // generator index of e_(i+1): alpha, beta, psi1..4 come first
    let f_idx = 10;
    let mut relations = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let rhs = if j == i + 2 {
                GradedElement::monomial(vec![f_idx], -Scalar::one())
            } else {
                GradedElement::zero()
            };
            relations.push(((e(i), e(j)), rhs));
        }
    }
    RingModel::new(gens, relations, vec![6, 2]).expect("tensor model is confluent")
}

/// Free commutative model on Chern-class generators c_1..c_max of
/// cohomological degree 2i, truncated at the given weight (degree 2*weight).
pub fn chern_model(max_index: usize, top_weight: i64) -> RingModel {
    let gens = (1..=max_index)
        .map(|i| Generator { name: format!("c{i}"), degree: vec![2 * i as i64] })
        .collect();
    RingModel::new(gens, Vec::new(), vec![2 * top_weight]).expect("free model is confluent")
}

/// Q[h]/(h^4) with a chosen value of the integral of h^3.
pub fn h_model(h_cubed_integral: i64) -> RingModel {
    let gens = vec![Generator { name: "h".into(), degree: vec![2] }];
    RingModel::new(gens, Vec::new(), vec![6])
        .expect("free model is confluent")
        .with_integral(vec![(vec![0, 0, 0], Scalar::from_int(h_cubed_integral))])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_sign_rules() {
        let m = tensor_model_genus2();
        let psi1 = m.gen_elt("psi1");
        let psi2 = m.gen_elt("psi2");
        let alpha = m.gen_elt("alpha");
        // odd * odd anticommutes
        let ab = psi1.mul(&psi2, &m);
        let ba = psi2.mul(&psi1, &m);
        assert_eq!(ab, ba.scale(&-Scalar::one()));
        // odd squares vanish
        assert!(psi1.mul(&psi1, &m).is_zero());
        // even commutes with everything
        assert_eq!(alpha.mul(&psi1, &m), psi1.mul(&alpha, &m));
        // reordering twice is stable: x*y - (-1)^(|x||y|) y*x = 0 for all pairs
        for i in 0..m.generator_count() {
            for j in 0..m.generator_count() {
                let x = GradedElement::monomial(vec![i], Scalar::one());
                let y = GradedElement::monomial(vec![j], Scalar::one());
                let sign = if m.generator(i).parity() == 1 && m.generator(j).parity() == 1 {
                    -Scalar::one()
                } else {
                    Scalar::one()
                };
                let lhs = x.mul(&y, &m);
                let rhs = y.mul(&x, &m).scale(&sign);
                assert_eq!(lhs, rhs, "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn curve_class_relations() {
        let m = tensor_model_genus2();
        let e1 = m.gen_elt("e1");
        let e2 = m.gen_elt("e2");
        let e3 = m.gen_elt("e3");
        let f = m.gen_elt("f");
        assert_eq!(e1.mul(&e3, &m), f.scale(&-Scalar::one()));
        assert_eq!(e3.mul(&e1, &m), f);
        assert!(e1.mul(&e2, &m).is_zero());
        // C-degree truncation kills f*e and f^2
        assert!(f.mul(&e1, &m).is_zero());
        assert!(f.mul(&f, &m).is_zero());
    }

    #[test]
    fn truncation_by_m_degree() {
        let m = tensor_model_genus2();
        let beta = m.gen_elt("beta");
        assert!(beta.mul(&beta, &m).is_zero()); // degree 8 > 6
        let alpha = m.gen_elt("alpha");
        let a3 = alpha.pow(3, &m);
        assert!(!a3.is_zero());
        assert!(a3.mul(&alpha, &m).is_zero());
    }

    #[test]
    fn h_model_integration() {
        let m = h_model(4);
        let h = m.gen_elt("h");
        let h3 = h.pow(3, &m);
        assert_eq!(m.integral_of(&h3.scale(&Scalar::from_int(2))), Scalar::from_int(8));
        assert!(h.pow(4, &m).is_zero());
    }
}
