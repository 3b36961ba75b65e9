//! Finite orthocomplemented lattices with explicit Hasse-diagram structure.
//!
//! A [`FiniteOrtholattice`] is built from a cover relation (the edges of a
//! Hasse diagram), an orthocomplement map, and distinguished bottom/top
//! elements. Construction validates every lattice law that can be checked
//! exhaustively: partial order, existence and uniqueness of meets and joins,
//! involution, order reversal, and the complement laws. The instances this
//! crate cares about are tiny (at most 16 elements), so meets and joins are
//! computed by scanning the order relation and cached in tables.
//!
//! Three fixtures ship with the module: [`firefly`] (the 6-element lattice of
//! window observations), [`boolean4`] (the 16-element Boolean lattice on four
//! box quadrants), and [`hexagon`] (the benchmark ortholattice that fails the
//! orthomodular law).

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serializable description of a finite ortholattice.
///
/// `covers` lists Hasse-diagram edges as `[lower, upper]` pairs. The order
/// relation of the constructed lattice is the reflexive-transitive closure of
/// the cover relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    pub ortho: BTreeMap<String, String>,
    pub bottom: String,
    pub top: String,
}

/// A finite orthocomplemented lattice with cached meet/join tables.
#[derive(Debug, Clone)]
pub struct FiniteOrtholattice {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    ortho: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteOrtholattice {
    /// Builds and validates a lattice from its Hasse-diagram description.
    ///
    /// Fails with [`Error::InvalidLattice`] if the covers contain a cycle,
    /// bottom/top are not extremal, some pair lacks a unique meet or join, or
    /// the orthocomplement violates involution, order reversal, or the
    /// complement laws.
    pub fn from_spec(spec: &LatticeSpec) -> Result<Self> {
        let n = spec.elements.len();
        if n == 0 {
            return Err(Error::InvalidLattice("no elements".into()));
        }
        let mut index = HashMap::new();
        for (i, e) in spec.elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::InvalidLattice(format!("duplicate element `{e}`")));
            }
        }
        let resolve = |e: &String| -> Result<usize> {
            index
                .get(e)
                .copied()
                .ok_or_else(|| Error::UnknownElement(e.clone()))
        };

        let bottom = resolve(&spec.bottom)?;
        let top = resolve(&spec.top)?;
        let mut covers = Vec::with_capacity(spec.covers.len());
        for (lo, hi) in &spec.covers {
            covers.push((resolve(lo)?, resolve(hi)?));
        }
        if spec.ortho.len() != n {
            return Err(Error::InvalidLattice(
                "ortho map must cover every element exactly once".into(),
            ));
        }
        let mut ortho = vec![usize::MAX; n];
        for (e, o) in &spec.ortho {
            ortho[resolve(e)?] = resolve(o)?;
        }

        // Reflexive-transitive closure of the cover relation.
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
        }
        for &(lo, hi) in &covers {
            leq[lo][hi] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidLattice(format!(
                        "order cycle through `{}` and `{}`",
                        spec.elements[i], spec.elements[j]
                    )));
                }
            }
        }
        for i in 0..n {
            if !leq[bottom][i] || !leq[i][top] {
                return Err(Error::InvalidLattice(format!(
                    "`{}` is not between bottom and top",
                    spec.elements[i]
                )));
            }
        }

        // Meet = greatest common lower bound, join dually. Every pair must
        // have both, uniquely, or the poset is not a lattice.
        let mut meet = vec![vec![usize::MAX; n]; n];
        let mut join = vec![vec![usize::MAX; n]; n];
        for i in 0..n {
            for j in 0..n {
                let lower: Vec<usize> =
                    (0..n).filter(|&k| leq[k][i] && leq[k][j]).collect();
                let greatest: Vec<usize> = lower
                    .iter()
                    .copied()
                    .filter(|&g| lower.iter().all(|&k| leq[k][g]))
                    .collect();
                match greatest.as_slice() {
                    [g] => meet[i][j] = *g,
                    _ => {
                        return Err(Error::InvalidLattice(format!(
                            "`{}` and `{}` have no unique infimum",
                            spec.elements[i], spec.elements[j]
                        )))
                    }
                }
                let upper: Vec<usize> =
                    (0..n).filter(|&k| leq[i][k] && leq[j][k]).collect();
                let least: Vec<usize> = upper
                    .iter()
                    .copied()
                    .filter(|&l| upper.iter().all(|&k| leq[l][k]))
                    .collect();
                match least.as_slice() {
                    [l] => join[i][j] = *l,
                    _ => {
                        return Err(Error::InvalidLattice(format!(
                            "`{}` and `{}` have no unique supremum",
                            spec.elements[i], spec.elements[j]
                        )))
                    }
                }
            }
        }

        // Orthocomplement laws.
        for i in 0..n {
            let o = ortho[i];
            if ortho[o] != i {
                return Err(Error::InvalidLattice(format!(
                    "ortho is not involutive at `{}`",
                    spec.elements[i]
                )));
            }
            if meet[i][o] != bottom || join[i][o] != top {
                return Err(Error::InvalidLattice(format!(
                    "`{}` and its orthocomplement are not complements",
                    spec.elements[i]
                )));
            }
            for j in 0..n {
                if leq[i][j] && !leq[ortho[j]][o] {
                    return Err(Error::InvalidLattice(format!(
                        "ortho does not reverse the order at `{}` <= `{}`",
                        spec.elements[i], spec.elements[j]
                    )));
                }
            }
        }

        Ok(Self {
            elements: spec.elements.clone(),
            index,
            covers,
            leq,
            meet,
            join,
            ortho,
            bottom,
            top,
        })
    }

    /// Exports the lattice in the serializable Hasse-diagram form.
    pub fn to_spec(&self) -> LatticeSpec {
        LatticeSpec {
            elements: self.elements.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(lo, hi)| (self.elements[lo].clone(), self.elements[hi].clone()))
                .collect(),
            ortho: self
                .elements
                .iter()
                .enumerate()
                .map(|(i, e)| (e.clone(), self.elements[self.ortho[i]].clone()))
                .collect(),
            bottom: self.elements[self.bottom].clone(),
            top: self.elements[self.top].clone(),
        }
    }

    fn idx(&self, x: &str) -> Result<usize> {
        self.index
            .get(x)
            .copied()
            .ok_or_else(|| Error::UnknownElement(x.to_string()))
    }

    pub fn elements(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(|s| s.as_str())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bottom(&self) -> &str {
        &self.elements[self.bottom]
    }

    pub fn top(&self) -> &str {
        &self.elements[self.top]
    }

    /// Partial-order test `x <= y`.
    pub fn leq(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.leq[self.idx(x)?][self.idx(y)?])
    }

    /// Infimum of `x` and `y`.
    pub fn meet(&self, x: &str, y: &str) -> Result<&str> {
        Ok(&self.elements[self.meet[self.idx(x)?][self.idx(y)?]])
    }

    /// Supremum of `x` and `y`.
    pub fn join(&self, x: &str, y: &str) -> Result<&str> {
        Ok(&self.elements[self.join[self.idx(x)?][self.idx(y)?]])
    }

    /// Orthocomplement of `x`.
    pub fn ortho(&self, x: &str) -> Result<&str> {
        Ok(&self.elements[self.ortho[self.idx(x)?]])
    }

    /// Exhaustively searches for a triple violating
    /// `x /\ (y \/ z) = (x /\ y) \/ (x /\ z)`. Returns the first violation in
    /// element order, or `None` when the lattice is distributive.
    pub fn distributivity_violation(&self) -> Option<[&str; 3]> {
        let n = self.elements.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet[x][self.join[y][z]];
                    let rhs = self.join[self.meet[x][y]][self.meet[x][z]];
                    if lhs != rhs {
                        return Some([
                            &self.elements[x],
                            &self.elements[y],
                            &self.elements[z],
                        ]);
                    }
                }
            }
        }
        None
    }

    /// Checks the orthomodular law `x <= y implies y = x \/ (y /\ x')` over
    /// all ordered pairs. Returns the first failing pair, if any.
    pub fn orthomodularity_counterexample(&self) -> Option<[&str; 2]> {
        let n = self.elements.len();
        for x in 0..n {
            for y in 0..n {
                if self.leq[x][y] && self.join[x][self.meet[y][self.ortho[x]]] != y {
                    return Some([&self.elements[x], &self.elements[y]]);
                }
            }
        }
        None
    }

    pub fn is_orthomodular(&self) -> bool {
        self.orthomodularity_counterexample().is_none()
    }

    /// Exhaustive check of the equational laws: commutativity, associativity,
    /// idempotence, absorption, and De Morgan. Construction already enforces
    /// the order-theoretic and complement laws; this validates the cached
    /// tables against the algebraic identities.
    pub fn verify_laws(&self) -> LawReport {
        let n = self.elements.len();
        let mut report = LawReport::default();
        for x in 0..n {
            report.idempotent &= self.meet[x][x] == x && self.join[x][x] == x;
            for y in 0..n {
                report.commutative &=
                    self.meet[x][y] == self.meet[y][x] && self.join[x][y] == self.join[y][x];
                report.absorption &= self.meet[x][self.join[x][y]] == x
                    && self.join[x][self.meet[x][y]] == x;
                report.de_morgan &= self.ortho[self.meet[x][y]]
                    == self.join[self.ortho[x]][self.ortho[y]]
                    && self.ortho[self.join[x][y]] == self.meet[self.ortho[x]][self.ortho[y]];
                for z in 0..n {
                    report.associative &= self.meet[self.meet[x][y]][z]
                        == self.meet[x][self.meet[y][z]]
                        && self.join[self.join[x][y]][z] == self.join[x][self.join[y][z]];
                }
            }
        }
        report
    }
}

impl Serialize for FiniteOrtholattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteOrtholattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = LatticeSpec::deserialize(d)?;
        FiniteOrtholattice::from_spec(&spec).map_err(serde::de::Error::custom)
    }
}

/// Outcome of [`FiniteOrtholattice::verify_laws`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LawReport {
    pub commutative: bool,
    pub associative: bool,
    pub idempotent: bool,
    pub absorption: bool,
    pub de_morgan: bool,
}

impl Default for LawReport {
    fn default() -> Self {
        LawReport {
            commutative: true,
            associative: true,
            idempotent: true,
            absorption: true,
            de_morgan: true,
        }
    }
}

impl LawReport {
    pub fn all_hold(&self) -> bool {
        self.commutative && self.associative && self.idempotent && self.absorption && self.de_morgan
    }
}

/// The 6-element lattice of firefly window observations: atoms `l`, `r`, `u`,
/// `d` between `bot` and `top`, with `l`/`r` and `u`/`d` orthocomplementary.
/// Nondistributive but orthomodular.
pub fn firefly() -> FiniteOrtholattice {
    let atoms = ["l", "r", "u", "d"];
    let spec = LatticeSpec {
        elements: ["bot", "l", "r", "u", "d", "top"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        covers: atoms
            .iter()
            .map(|a| ("bot".to_string(), a.to_string()))
            .chain(atoms.iter().map(|a| (a.to_string(), "top".to_string())))
            .collect(),
        ortho: [
            ("bot", "top"),
            ("l", "r"),
            ("r", "l"),
            ("u", "d"),
            ("d", "u"),
            ("top", "bot"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect(),
        bottom: "bot".into(),
        top: "top".into(),
    };
    FiniteOrtholattice::from_spec(&spec).expect("firefly fixture is a valid ortholattice")
}

fn subset_name(mask: u8) -> String {
    let members: Vec<String> = (0..4)
        .filter(|b| mask & (1 << b) != 0)
        .map(|b| (b + 1).to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// The 16-element Boolean lattice of subsets of the four box quadrants
/// `{1,2,3,4}`, ordered by inclusion, with set complement as orthocomplement.
pub fn boolean4() -> FiniteOrtholattice {
    let elements: Vec<String> = (0u8..16).map(subset_name).collect();
    let mut covers = Vec::new();
    for mask in 0u8..16 {
        for b in 0..4 {
            if mask & (1 << b) == 0 {
                covers.push((subset_name(mask), subset_name(mask | (1 << b))));
            }
        }
    }
    let spec = LatticeSpec {
        elements,
        covers,
        ortho: (0u8..16)
            .map(|m| (subset_name(m), subset_name(!m & 0xF)))
            .collect(),
        bottom: subset_name(0),
        top: subset_name(0xF),
    };
    FiniteOrtholattice::from_spec(&spec).expect("boolean4 fixture is a valid ortholattice")
}

/// The hexagon ortholattice `bot < a < b < top`, `bot < b' < a' < top`: a
/// valid ortholattice that fails the orthomodular law. Useful as a negative
/// benchmark for [`FiniteOrtholattice::is_orthomodular`].
pub fn hexagon() -> FiniteOrtholattice {
    let spec = LatticeSpec {
        elements: ["bot", "a", "b", "a'", "b'", "top"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        covers: [
            ("bot", "a"),
            ("a", "b"),
            ("b", "top"),
            ("bot", "b'"),
            ("b'", "a'"),
            ("a'", "top"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect(),
        ortho: [
            ("bot", "top"),
            ("a", "a'"),
            ("a'", "a"),
            ("b", "b'"),
            ("b'", "b"),
            ("top", "bot"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect(),
        bottom: "bot".into(),
        top: "top".into(),
    };
    FiniteOrtholattice::from_spec(&spec).expect("hexagon fixture is a valid ortholattice")
}

/// Order- and orthocomplement-preserving injection of the firefly lattice
/// into [`boolean4`]: the window atoms map to the two-quadrant subsets they
/// aggregate (`l` to `{1,2}`, `r` to `{3,4}`, `d` to `{1,3}`, `u` to `{2,4}`).
pub fn boolean_embedding() -> BTreeMap<String, String> {
    [
        ("bot", "{}"),
        ("l", "{1,2}"),
        ("r", "{3,4}"),
        ("d", "{1,3}"),
        ("u", "{2,4}"),
        ("top", "{1,2,3,4}"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn firefly_meet_join_relations() {
        let lat = firefly();
        assert_eq!(lat.meet("l", "r").unwrap(), "bot");
        assert_eq!(lat.meet("u", "d").unwrap(), "bot");
        assert_eq!(lat.meet("l", "top").unwrap(), "l");
        assert_eq!(lat.join("r", "d").unwrap(), "top");
        assert_eq!(lat.join("bot", "u").unwrap(), "u");
        // All pairwise joins of distinct atoms hit top, meets hit bot.
        for a in ["l", "r", "u", "d"] {
            for b in ["l", "r", "u", "d"] {
                if a != b {
                    assert_eq!(lat.join(a, b).unwrap(), "top");
                    assert_eq!(lat.meet(a, b).unwrap(), "bot");
                }
            }
        }
    }

    #[test]
    fn unknown_element_is_a_domain_error() {
        let lat = firefly();
        assert!(matches!(
            lat.meet("l", "x"),
            Err(Error::UnknownElement(e)) if e == "x"
        ));
    }

    #[test]
    fn firefly_is_nondistributive_with_genuine_witness() {
        let lat = firefly();
        let [x, y, z] = lat.distributivity_violation().expect("witness expected");
        let lhs = lat.meet(x, lat.join(y, z).unwrap()).unwrap();
        let rhs = lat
            .join(lat.meet(x, y).unwrap(), lat.meet(x, z).unwrap())
            .unwrap();
        assert_ne!(lhs, rhs);
        // The textbook witness also violates: l /\ (r \/ d) = l, but
        // (l /\ r) \/ (l /\ d) = bot.
        assert_eq!(lat.meet("l", lat.join("r", "d").unwrap()).unwrap(), "l");
        assert_eq!(
            lat.join(lat.meet("l", "r").unwrap(), lat.meet("l", "d").unwrap())
                .unwrap(),
            "bot"
        );
    }

    #[test]
    fn boolean_and_two_element_lattices_are_distributive() {
        assert!(boolean4().distributivity_violation().is_none());
        let two = LatticeSpec {
            elements: vec!["bot".into(), "top".into()],
            covers: vec![("bot".into(), "top".into())],
            ortho: [("bot", "top"), ("top", "bot")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            bottom: "bot".into(),
            top: "top".into(),
        };
        let two = FiniteOrtholattice::from_spec(&two).unwrap();
        assert!(two.distributivity_violation().is_none());
        assert!(two.is_orthomodular());
    }

    #[test]
    fn orthomodularity_verdicts() {
        assert!(firefly().is_orthomodular());
        assert!(boolean4().is_orthomodular());
        let hex = hexagon();
        let [x, y] = hex
            .orthomodularity_counterexample()
            .expect("hexagon must fail the orthomodular law");
        assert!(hex.leq(x, y).unwrap());
        let rebuilt = hex
            .join(x, hex.meet(y, hex.ortho(x).unwrap()).unwrap())
            .unwrap();
        assert_ne!(rebuilt, y);
    }

    #[test]
    fn equational_laws_hold_exhaustively() {
        for lat in [firefly(), boolean4(), hexagon()] {
            assert!(lat.verify_laws().all_hold());
        }
    }

    #[test]
    fn boolean4_join_of_atoms() {
        let lat = boolean4();
        assert_eq!(lat.join("{1}", "{2}").unwrap(), "{1,2}");
        assert_eq!(lat.meet("{1,2}", "{1,3}").unwrap(), "{1}");
        assert_eq!(lat.ortho("{1,2}").unwrap(), "{3,4}");
    }

    #[test]
    fn embedding_preserves_order_and_ortho() {
        let fire = firefly();
        let bool4 = boolean4();
        let map = boolean_embedding();
        assert_eq!(map["l"], "{1,2}");
        assert_eq!(map["d"], "{1,3}");
        // Injective.
        let images: std::collections::BTreeSet<_> = map.values().collect();
        assert_eq!(images.len(), map.len());
        // x <= y iff image(x) <= image(y), and ortho commutes with the map.
        for x in fire.elements() {
            for y in fire.elements() {
                assert_eq!(
                    fire.leq(x, y).unwrap(),
                    bool4.leq(&map[x], &map[y]).unwrap()
                );
            }
            assert_eq!(
                bool4.ortho(&map[x]).unwrap(),
                map[fire.ortho(x).unwrap()]
            );
        }
    }

    #[test]
    fn rejects_broken_structures() {
        // Cycle.
        let cyc = LatticeSpec {
            elements: vec!["a".into(), "b".into()],
            covers: vec![("a".into(), "b".into()), ("b".into(), "a".into())],
            ortho: [("a", "b"), ("b", "a")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            bottom: "a".into(),
            top: "b".into(),
        };
        assert!(matches!(
            FiniteOrtholattice::from_spec(&cyc),
            Err(Error::InvalidLattice(_))
        ));

        // Diamond without unique join: two maximal elements over two atoms.
        let no_join = LatticeSpec {
            elements: vec!["0".into(), "x".into(), "y".into(), "p".into(), "q".into(), "1".into()],
            covers: vec![
                ("0".into(), "x".into()),
                ("0".into(), "y".into()),
                ("x".into(), "p".into()),
                ("x".into(), "q".into()),
                ("y".into(), "p".into()),
                ("y".into(), "q".into()),
                ("p".into(), "1".into()),
                ("q".into(), "1".into()),
            ],
            ortho: [("0", "1"), ("1", "0"), ("x", "q"), ("q", "x"), ("y", "p"), ("p", "y")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            bottom: "0".into(),
            top: "1".into(),
        };
        assert!(matches!(
            FiniteOrtholattice::from_spec(&no_join),
            Err(Error::InvalidLattice(_))
        ));
    }

    #[test]
    fn spec_round_trip() {
        let lat = firefly();
        let json = serde_json::to_string(&lat).unwrap();
        let back: FiniteOrtholattice = serde_json::from_str(&json).unwrap();
        assert_eq!(lat.to_spec(), back.to_spec());
    }
}
