//! Contraction combinatorics between two interaction vertices: admissible
//! pairings, Fermi signs, singularity degrees, and the symbolic partition
//! sums of the inductive causal construction.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Bose,
    Fermi,
}

/// One free-field species: statistics, mass, spinor dimension, singularity
/// index s of its plane-wave kernels, and the species it pairs with.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub name: String,
    pub statistics: Statistics,
    pub mass: f64,
    pub components: usize,
    /// 2s, so that half-integers stay exact (Dirac: 0, photon/scalar: -1).
    pub twice_sing_index: i32,
    pub partner: String,
}

impl FieldSpec {
    pub fn dirac(m: f64) -> Self {
        FieldSpec {
            name: "psi".into(),
            statistics: Statistics::Fermi,
            mass: m,
            components: 4,
            twice_sing_index: 0,
            partner: "psi#".into(),
        }
    }

    pub fn dirac_conjugate(m: f64) -> Self {
        FieldSpec {
            name: "psi#".into(),
            statistics: Statistics::Fermi,
            mass: m,
            components: 4,
            twice_sing_index: 0,
            partner: "psi".into(),
        }
    }

    pub fn photon() -> Self {
        FieldSpec {
            name: "A".into(),
            statistics: Statistics::Bose,
            mass: 0.0,
            components: 4,
            twice_sing_index: -1,
            partner: "A".into(),
        }
    }

    pub fn scalar(m: f64) -> Self {
        FieldSpec {
            name: "phi".into(),
            statistics: Statistics::Bose,
            mass: m,
            components: 1,
            twice_sing_index: -1,
            partner: "phi".into(),
        }
    }

    pub fn is_fermi(&self) -> bool {
        self.statistics == Statistics::Fermi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    CreationPart,
    AnnihilationPart,
    FullField,
}

/// An interaction vertex: an ordered Wick monomial of field factors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Vertex {
    pub factors: Vec<(FieldSpec, Role)>,
    pub spacetime_label: usize,
}

impl Vertex {
    pub fn new(factors: Vec<(FieldSpec, Role)>, spacetime_label: usize) -> Self {
        Vertex { factors, spacetime_label }
    }

    /// The spinor-QED vertex :psi# gamma A psi:, factor order (psi#, A, psi).
    pub fn qed(m: f64, spacetime_label: usize) -> Self {
        Vertex::new(
            vec![
                (FieldSpec::dirac_conjugate(m), Role::FullField),
                (FieldSpec::photon(), Role::FullField),
                (FieldSpec::dirac(m), Role::FullField),
            ],
            spacetime_label,
        )
    }

    /// Toy vertex with a single neutral scalar factor.
    pub fn scalar_toy(m: f64, spacetime_label: usize) -> Self {
        Vertex::new(vec![(FieldSpec::scalar(m), Role::FullField)], spacetime_label)
    }

    /// Checks that every species present has an involutive partner entry
    /// within this vertex pair's species table.
    fn check_partners(table: &BTreeMap<String, FieldSpec>) -> Result<()> {
        for (name, spec) in table {
            match table.get(&spec.partner) {
                None => return Err(Error::MissingPartner(spec.partner.clone())),
                Some(partner_spec) => {
                    if &partner_spec.partner != name {
                        return Err(Error::PartnerNotInvolutive(
                            name.clone(),
                            spec.partner.clone(),
                            partner_spec.partner.clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Reference to an uncontracted factor: (vertex 1 or 2, factor index).
pub type FactorRef = (u8, usize);

/// One term of the Wick decomposition of a two-vertex product.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContractionPattern {
    pub q: usize,
    /// (index into first vertex, index into second vertex)
    pub pairs: Vec<(usize, usize)>,
    #[serde(rename = "sign")]
    pub fermi_sign: i8,
    /// Singularity degree 2*sum(s) + 3q - 4; `None` for q = 0 (no scalar
    /// factor to split).
    pub omega: Option<i32>,
    pub residual: Vec<FactorRef>,
    #[serde(rename = "scalar_id")]
    pub scalar_factor_id: String,
}

fn scalar_id(v1: &Vertex, v2: &Vertex, pairs: &[(usize, usize)]) -> String {
    if pairs.is_empty() {
        return "unit".into();
    }
    let mut parts: Vec<String> = pairs
        .iter()
        .map(|&(i, j)| format!("{}>{}", v1.factors[i].0.name, v2.factors[j].0.name))
        .collect();
    parts.sort();
    parts.join("*")
}

/// Singularity degree of a pattern: omega = 2 (s' + ... + s^(q)) + 3q - 4,
/// evaluated over the contracted pairs' species. Returns `None` when q = 0.
pub fn singularity_degree(pattern: &ContractionPattern, v1: &Vertex) -> Option<i32> {
    if pattern.q == 0 {
        return None;
    }
    let twice_s: i32 = pattern
        .pairs
        .iter()
        .map(|&(i, _)| v1.factors[i].0.twice_sing_index)
        .sum();
    Some(twice_s + 3 * pattern.q as i32 - 4)
}

/// Fermi sign of a pattern: parity of the fermionic transpositions that
/// bring every contracted pair adjacent in the concatenated factor list
/// (second vertex appended after the first), pairs ordered by their first
/// element, residual factors keeping their relative order.
pub fn fermi_sign(pattern: &ContractionPattern, v1: &Vertex, v2: &Vertex) -> Result<i8> {
    let n1 = v1.factors.len();
    for &(i, j) in &pattern.pairs {
        if i >= n1 || j >= v2.factors.len() {
            return Err(Error::InadmissiblePattern(format!(
                "pair ({i},{j}) out of range"
            )));
        }
        if v1.factors[i].0.partner != v2.factors[j].0.name {
            return Err(Error::InadmissiblePattern(format!(
                "pair ({i},{j}) joins non-partner species {} and {}",
                v1.factors[i].0.name, v2.factors[j].0.name
            )));
        }
    }
    // global positions: v1 factors 0..n1, v2 factors n1..n1+n2
    let fermionic: Vec<usize> = v1
        .factors
        .iter()
        .chain(v2.factors.iter())
        .enumerate()
        .filter(|(_, f)| f.0.is_fermi())
        .map(|(k, _)| k)
        .collect();
    if fermionic.is_empty() {
        return Ok(1);
    }
    // target order: contracted fermion pairs (a, b) adjacent, sorted by a;
    // then residual fermions in original order
    let mut in_pair: BTreeMap<usize, usize> = BTreeMap::new(); // pos -> pair idx
    let mut pairs_global: Vec<(usize, usize)> = pattern
        .pairs
        .iter()
        .map(|&(i, j)| (i, n1 + j))
        .collect();
    pairs_global.sort();
    for (k, &(a, b)) in pairs_global.iter().enumerate() {
        in_pair.insert(a, k);
        in_pair.insert(b, k);
    }
    let mut target: Vec<usize> = Vec::new();
    for &(a, b) in &pairs_global {
        for pos in [a, b] {
            if fermionic.contains(&pos) {
                target.push(pos);
            }
        }
    }
    for &pos in &fermionic {
        if !in_pair.contains_key(&pos) {
            target.push(pos);
        }
    }
    // parity of the permutation taking `fermionic` (initial order) to `target`
    let index_of: BTreeMap<usize, usize> =
        fermionic.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let perm: Vec<usize> = target.iter().map(|p| index_of[p]).collect();
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    Ok(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Enumerates every admissible contraction pattern between two vertices,
/// all q from 0 up to the maximal matching, in the canonical order
/// (ascending q, then lexicographic pair list).
pub fn enumerate_contractions(v1: &Vertex, v2: &Vertex) -> Result<Vec<ContractionPattern>> {
    let mut table = BTreeMap::new();
    for (f, _) in v1.factors.iter().chain(v2.factors.iter()) {
        table.insert(f.name.clone(), f.clone());
    }
    Vertex::check_partners(&table)?;

    let n1 = v1.factors.len();
    let n2 = v2.factors.len();
    let mut all: Vec<Vec<(usize, usize)>> = Vec::new();
    // backtracking over v1 factors in order; each either skipped or paired
    // with a free admissible v2 factor
    fn extend(
        i: usize,
        n1: usize,
        n2: usize,
        v1: &Vertex,
        v2: &Vertex,
        used2: &mut Vec<bool>,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if i == n1 {
            out.push(current.clone());
            return;
        }
        // skip factor i
        extend(i + 1, n1, n2, v1, v2, used2, current, out);
        for j in 0..n2 {
            if !used2[j] && v1.factors[i].0.partner == v2.factors[j].0.name {
                used2[j] = true;
                current.push((i, j));
                extend(i + 1, n1, n2, v1, v2, used2, current, out);
                current.pop();
                used2[j] = false;
            }
        }
    }
    let mut used2 = vec![false; n2];
    let mut current = Vec::new();
    extend(0, n1, n2, v1, v2, &mut used2, &mut current, &mut all);

    all.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));

    let mut patterns = Vec::with_capacity(all.len());
    for pairs in all {
        let q = pairs.len();
        let residual: Vec<FactorRef> = (0..n1)
            .filter(|i| !pairs.iter().any(|&(a, _)| a == *i))
            .map(|i| (1u8, i))
            .chain(
                (0..n2)
                    .filter(|j| !pairs.iter().any(|&(_, b)| b == *j))
                    .map(|j| (2u8, j)),
            )
            .collect();
        let mut pat = ContractionPattern {
            q,
            pairs,
            fermi_sign: 1,
            omega: None,
            residual,
            scalar_factor_id: String::new(),
        };
        pat.scalar_factor_id = scalar_id(v1, v2, &pat.pairs);
        pat.omega = singularity_degree(&pat, v1);
        pat.fermi_sign = fermi_sign(&pat, v1, v2)?;
        patterns.push(pat);
    }
    Ok(patterns)
}

/// Factor ordering of a partition-sum term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TermOrder {
    /// S(Y, x_n) SBar(X) — retarded-type ordering
    SThenSBar,
    /// SBar(X) S(Y, x_n) — advanced-type ordering
    SBarThenS,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionTerm {
    /// bitmask over {x_1 .. x_{n-1}}; bit k = x_{k+1} in X
    pub x_mask: u32,
    pub ordering: TermOrder,
    pub sign: i8,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionSum {
    pub n: usize,
    pub terms: Vec<PartitionTerm>,
}

impl PartitionSum {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The symbolic sums A'_(n), R'_(n) and D_(n) = R'_(n) - A'_(n) of the
/// inductive step; every nonempty X \subset {x_1..x_{n-1}} contributes once.
pub fn epstein_glaser_sums(n: usize) -> (PartitionSum, PartitionSum, PartitionSum) {
    assert!((2..=31).contains(&n), "order must be in 2..=31");
    let full = (1u32 << (n - 1)) - 1;
    let mut a = Vec::new();
    let mut r = Vec::new();
    let mut d = Vec::new();
    for x_mask in 1..=full {
        a.push(PartitionTerm { x_mask, ordering: TermOrder::SBarThenS, sign: 1 });
        r.push(PartitionTerm { x_mask, ordering: TermOrder::SThenSBar, sign: 1 });
        d.push(PartitionTerm { x_mask, ordering: TermOrder::SThenSBar, sign: 1 });
        d.push(PartitionTerm { x_mask, ordering: TermOrder::SBarThenS, sign: -1 });
    }
    (
        PartitionSum { n, terms: a },
        PartitionSum { n, terms: r },
        PartitionSum { n, terms: d },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qed_pair() -> (Vertex, Vertex) {
        (Vertex::qed(1.0, 1), Vertex::qed(1.0, 2))
    }

    #[test]
    fn qed_pattern_census() {
        let (v1, v2) = qed_pair();
        let pats = enumerate_contractions(&v1, &v2).unwrap();
        assert_eq!(pats.len(), 8);
        let count = |q: usize| pats.iter().filter(|p| p.q == q).count();
        assert_eq!(count(0), 1);
        assert_eq!(count(1), 3);
        assert_eq!(count(2), 3);
        assert_eq!(count(3), 1);
    }

    #[test]
    fn qed_singularity_degrees() {
        let (v1, v2) = qed_pair();
        let pats = enumerate_contractions(&v1, &v2).unwrap();
        // Dirac q=1: -1, photon q=1: -2, Dirac^2 q=2: 2, Dirac+photon q=2: 1, q=3: 4
        let mut found = std::collections::BTreeMap::new();
        for p in &pats {
            if let Some(w) = p.omega {
                *found.entry((p.q, w)).or_insert(0usize) += 1;
            }
        }
        assert_eq!(found.get(&(1, -1)), Some(&2)); // two fermionic directions
        assert_eq!(found.get(&(1, -2)), Some(&1));
        assert_eq!(found.get(&(2, 2)), Some(&1));
        assert_eq!(found.get(&(2, 1)), Some(&2));
        assert_eq!(found.get(&(3, 4)), Some(&1));
    }

    #[test]
    fn q0_has_unit_scalar_id_and_no_omega() {
        let (v1, v2) = qed_pair();
        let pats = enumerate_contractions(&v1, &v2).unwrap();
        let p0 = pats.iter().find(|p| p.q == 0).unwrap();
        assert_eq!(p0.scalar_factor_id, "unit");
        assert!(p0.omega.is_none());
        assert_eq!(p0.fermi_sign, 1);
        assert_eq!(p0.residual.len(), 6);
    }

    #[test]
    fn bosonic_toy_vertex() {
        let v1 = Vertex::scalar_toy(1.0, 1);
        let v2 = Vertex::scalar_toy(1.0, 2);
        let pats = enumerate_contractions(&v1, &v2).unwrap();
        assert_eq!(pats.len(), 2);
        assert!(pats.iter().all(|p| p.fermi_sign == 1));
        assert_eq!(pats[1].omega, Some(-2)); // 2(-1/2) + 3 - 4
    }

    #[test]
    fn photon_only_pattern_sign_positive() {
        let (v1, v2) = qed_pair();
        let pats = enumerate_contractions(&v1, &v2).unwrap();
        let photon = pats
            .iter()
            .find(|p| p.q == 1 && p.scalar_factor_id == "A>A")
            .unwrap();
        assert_eq!(photon.fermi_sign, 1);
    }

    #[test]
    fn missing_partner_rejected() {
        let mut spec = FieldSpec::scalar(1.0);
        spec.partner = "ghost".into();
        let v = Vertex::new(vec![(spec, Role::FullField)], 1);
        assert!(enumerate_contractions(&v, &v.clone()).is_err());
    }

    #[test]
    fn eg_sum_counts() {
        for n in 2..=12 {
            let (a, r, d) = epstein_glaser_sums(n);
            let want = (1usize << (n - 1)) - 1;
            assert_eq!(a.len(), want);
            assert_eq!(r.len(), want);
            assert_eq!(d.len(), 2 * want);
        }
        let (_, r2, _) = epstein_glaser_sums(2);
        assert_eq!(r2.terms[0].x_mask, 1);
        assert_eq!(r2.terms[0].ordering, TermOrder::SThenSBar);
        let (_, r3, _) = epstein_glaser_sums(3);
        assert_eq!(r3.len(), 3);
    }

    #[test]
    fn omega_monotone_in_q() {
        // omega(q+1) - omega(q) = 2s + 3 >= 2 for s >= -1/2
        for spec in [FieldSpec::dirac(1.0), FieldSpec::photon(), FieldSpec::scalar(1.0)] {
            let step = spec.twice_sing_index + 3;
            assert!(step >= 2, "{}", spec.name);
        }
    }

    #[test]
    fn json_round_trip() {
        let (v1, v2) = qed_pair();
        let pats = enumerate_contractions(&v1, &v2).unwrap();
        let s = serde_json::to_string(&pats).unwrap();
        let back: Vec<ContractionPattern> = serde_json::from_str(&s).unwrap();
        assert_eq!(back.len(), pats.len());
        for (a, b) in pats.iter().zip(back.iter()) {
            assert_eq!(a.q, b.q);
            assert_eq!(a.pairs, b.pairs);
            assert_eq!(a.fermi_sign, b.fermi_sign);
            assert_eq!(a.omega, b.omega);
            assert_eq!(a.scalar_factor_id, b.scalar_factor_id);
        }
    }

    #[test]
    fn partner_involution_cardinalities() {
        let (v1, v2) = qed_pair();
        let p12 = enumerate_contractions(&v1, &v2).unwrap();
        let p21 = enumerate_contractions(&v2, &v1).unwrap();
        for q in 0..=3 {
            assert_eq!(
                p12.iter().filter(|p| p.q == q).count(),
                p21.iter().filter(|p| p.q == q).count()
            );
        }
    }

    #[test]
    fn sign_bilinearity_under_adjacent_swap() {
        // swapping the two fermionic factors of v1 (with the boson between
        // them moved out of the way) flips the sign of every pattern that
        // contracts exactly one of them ... exhaustive check on a vertex
        // where the two fermions are adjacent.
        let m = 1.0;
        let v_ab = Vertex::new(
            vec![
                (FieldSpec::dirac_conjugate(m), Role::FullField),
                (FieldSpec::dirac(m), Role::FullField),
                (FieldSpec::photon(), Role::FullField),
            ],
            1,
        );
        let v_ba = Vertex::new(
            vec![
                (FieldSpec::dirac(m), Role::FullField),
                (FieldSpec::dirac_conjugate(m), Role::FullField),
                (FieldSpec::photon(), Role::FullField),
            ],
            1,
        );
        let v2 = Vertex::qed(m, 2);
        let pats_ab = enumerate_contractions(&v_ab, &v2).unwrap();
        let pats_ba = enumerate_contractions(&v_ba, &v2).unwrap();
        // match patterns by the multiset of (species pair) and q
        for pa in &pats_ab {
            let key: Vec<String> = {
                let mut k: Vec<String> = pa
                    .pairs
                    .iter()
                    .map(|&(i, j)| {
                        format!("{}>{}", v_ab.factors[i].0.name, v2.factors[j].0.name)
                    })
                    .collect();
                k.sort();
                k
            };
            let pb = pats_ba
                .iter()
                .find(|p| {
                    let mut k: Vec<String> = p
                        .pairs
                        .iter()
                        .map(|&(i, j)| {
                            format!("{}>{}", v_ba.factors[i].0.name, v2.factors[j].0.name)
                        })
                        .collect();
                    k.sort();
                    k == key && p.q == pa.q
                })
                .unwrap();
            // a contraction line leaving either swapped factor crosses the
            // swap an odd number of times: one factor contracted -> its line
            // crosses the other fermion; both contracted -> the two lines
            // cross each other. Either way the sign flips; with neither
            // contracted the (canonically ordered) residual is unaffected.
            let contracted_fermions = pa
                .pairs
                .iter()
                .filter(|&&(i, _)| i == 0 || i == 1)
                .count();
            if contracted_fermions >= 1 {
                assert_eq!(pa.fermi_sign, -pb.fermi_sign, "pattern {key:?}");
            } else {
                assert_eq!(pa.fermi_sign, pb.fermi_sign, "pattern {key:?}");
            }
        }
    }
}
