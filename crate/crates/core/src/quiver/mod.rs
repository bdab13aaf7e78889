//! Dynkin quivers, dimension vectors and flag types.

mod orbits;
mod rep;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use orbits::{brute_force_roots, indecomposable_rep, positive_roots, KostantPartition, OrbitData, QuiverCatalog};
pub use rep::{hom_dim, Rep, Representation};

/// Simply-laced Dynkin diagram types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl DynkinType {
    pub fn num_positive_roots(&self) -> usize {
        match *self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(8) => 120,
            DynkinType::E(_) => unreachable!(),
        }
    }

    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidQuiver(format!("unknown Dynkin type {s:?}"));
        let (head, tail) = s.split_at(1.min(s.len()));
        let n: usize = tail.parse().map_err(|_| bad())?;
        match head {
            "A" | "a" if n >= 1 => Ok(DynkinType::A(n)),
            "D" | "d" if n >= 4 => Ok(DynkinType::D(n)),
            "E" | "e" if (6..=8).contains(&n) => Ok(DynkinType::E(n)),
            _ => Err(bad()),
        }
    }
}

/// An orientation of a simply-laced Dynkin diagram.
///
/// Vertices are indexed `0..n`; each carries a display label. Arrows are
/// `(source, target)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverData {
    labels: Vec<String>,
    arrows: Vec<(usize, usize)>,
    components: Vec<DynkinType>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LabelRepr {
    Str(String),
    Int(i64),
}

impl LabelRepr {
    fn into_string(self) -> String {
        match self {
            LabelRepr::Str(s) => s,
            LabelRepr::Int(i) => i.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ArrowRepr {
    from: LabelRepr,
    to: LabelRepr,
}

#[derive(Serialize, Deserialize)]
struct QuiverFile {
    #[serde(rename = "type", default)]
    kind: String,
    vertices: Vec<LabelRepr>,
    arrows: Vec<ArrowRepr>,
}

impl QuiverData {
    /// Builds and validates a quiver. `declared` is a `+`-separated list of
    /// component types (`"A3"`, `"D4+A1"`); an empty string skips the check.
    pub fn new(declared: &str, labels: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {l:?}")));
            }
        }
        for &(s, t) in &arrows {
            if s >= n || t >= n {
                return Err(Error::InvalidQuiver("arrow endpoint out of range".into()));
            }
            if s == t {
                return Err(Error::InvalidQuiver(format!("loop at {}", labels[s])));
            }
        }
        let components = classify(n, &arrows, &labels)?;
        if !declared.trim().is_empty() {
            let mut want = declared
                .split('+')
                .map(DynkinType::parse)
                .collect::<Result<Vec<_>>>()?;
            want.sort();
            let mut got = components.clone();
            got.sort();
            if want != got {
                return Err(Error::InvalidQuiver(format!(
                    "declared type {declared} but the diagram is {}",
                    got.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("+")
                )));
            }
        }
        Ok(Self {
            labels,
            arrows,
            components,
        })
    }

    fn numbered(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    /// Linear A_n with arrows `i -> i+1`.
    pub fn a(n: usize) -> Self {
        Self::a_oriented(n, &vec![true; n.saturating_sub(1)])
    }

    /// Linear A_n; `forward[k]` chooses `k -> k+1` (true) or `k+1 -> k` (false).
    pub fn a_oriented(n: usize, forward: &[bool]) -> Self {
        assert_eq!(forward.len(), n.saturating_sub(1));
        let arrows = forward
            .iter()
            .enumerate()
            .map(|(k, &f)| if f { (k, k + 1) } else { (k + 1, k) })
            .collect();
        Self::new("", Self::numbered(n), arrows).expect("A_n is Dynkin")
    }

    /// D_n: chain `1 -> 2 -> ... -> n-2`, with `n-1` and `n` both pointing into `n-2`.
    pub fn d(n: usize) -> Self {
        assert!(n >= 4);
        let mut arrows: Vec<(usize, usize)> = (0..n - 3).map(|k| (k, k + 1)).collect();
        arrows.push((n - 2, n - 3));
        arrows.push((n - 1, n - 3));
        Self::new("", Self::numbered(n), arrows).expect("D_n is Dynkin")
    }

    /// D4 in subspace orientation: three outer vertices with arrows into the centre `0`.
    pub fn d4_subspace() -> Self {
        let labels = vec!["0".into(), "1".into(), "2".into(), "3".into()];
        Self::new("D4", labels, vec![(1, 0), (2, 0), (3, 0)]).expect("D4 is Dynkin")
    }

    /// E_n (n = 6, 7, 8): chain `1 - 3 - 4 - 5 - ...` with `2` attached to `4`.
    pub fn e(n: usize) -> Self {
        assert!((6..=8).contains(&n));
        // Bourbaki labels 1..n; index = label - 1
        let mut arrows = vec![(0, 2), (2, 3), (1, 3)];
        for k in 3..n - 1 {
            arrows.push((k, k + 1));
        }
        Self::new("", Self::numbered(n), arrows).expect("E_n is Dynkin")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: QuiverFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("quiver file: {e}")))?;
        let labels: Vec<String> = file.vertices.into_iter().map(LabelRepr::into_string).collect();
        let index: BTreeMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut arrows = Vec::new();
        for a in file.arrows {
            let (from, to) = (a.from.into_string(), a.to.into_string());
            let s = *index.get(from.as_str()).ok_or(Error::UnknownVertex(from.clone()))?;
            let t = *index.get(to.as_str()).ok_or(Error::UnknownVertex(to.clone()))?;
            arrows.push((s, t));
        }
        Self::new(&file.kind, labels, arrows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.type_name(),
            "vertices": self.labels,
            "arrows": self.arrows.iter()
                .map(|&(s, t)| serde_json::json!({"from": self.labels[s], "to": self.labels[t]}))
                .collect::<Vec<_>>(),
        })
    }

    pub fn type_name(&self) -> String {
        self.components
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn components(&self) -> &[DynkinType] {
        &self.components
    }

    pub fn is_type_a(&self) -> bool {
        self.components.iter().all(|t| matches!(t, DynkinType::A(_)))
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Number of arrows `i -> j`.
    pub fn h(&self, i: usize, j: usize) -> i64 {
        self.arrows.iter().filter(|&&a| a == (i, j)).count() as i64
    }

    /// The symmetric form `i . j`.
    pub fn symform(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else {
            -self.h(i, j) - self.h(j, i)
        }
    }

    pub fn symform_labels(&self, i: &str, j: &str) -> Result<i64> {
        Ok(self.symform(self.index(i)?, self.index(j)?))
    }

    /// The symmetric bilinear form extended to dimension vectors.
    pub fn symform_dv(&self, a: &DimVector, b: &DimVector) -> i64 {
        let n = self.num_vertices();
        let mut s = 0;
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a.0[i] as i64 * b.0[j] as i64 * self.symform(i, j);
            }
        }
        s
    }

    /// The Euler form `<a, b> = sum_i a_i b_i - sum_h a_{h'} b_{h''}`.
    pub fn euler(&self, a: &DimVector, b: &DimVector) -> i64 {
        let diag: i64 = a.0.iter().zip(&b.0).map(|(x, y)| (*x * *y) as i64).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|&(s, t)| (a.0[s] * b.0[t]) as i64)
            .sum();
        diag - off
    }

    /// `dim E_V = sum_h nu_{h'} nu_{h''}`.
    pub fn dim_ev(&self, nu: &DimVector) -> i64 {
        self.arrows
            .iter()
            .map(|&(s, t)| (nu.0[s] * nu.0[t]) as i64)
            .sum()
    }

    /// `dim G_V = sum_i nu_i^2`.
    pub fn dim_gv(&self, nu: &DimVector) -> i64 {
        nu.0.iter().map(|&x| (x * x) as i64).sum()
    }

    /// The same underlying graph with arrows incident to `k` reversed.
    pub(crate) fn reflect_arrows(arrows: &[(usize, usize)], k: usize) -> Vec<(usize, usize)> {
        arrows
            .iter()
            .map(|&(s, t)| if s == k || t == k { (t, s) } else { (s, t) })
            .collect()
    }

    /// All orientations of the same underlying graph (2^#arrows of them).
    pub fn all_orientations(&self) -> Vec<QuiverData> {
        let m = self.arrows.len();
        (0..1u64 << m)
            .map(|mask| {
                let arrows = self
                    .arrows
                    .iter()
                    .enumerate()
                    .map(|(k, &(s, t))| if mask >> k & 1 == 1 { (t, s) } else { (s, t) })
                    .collect();
                QuiverData::new("", self.labels.clone(), arrows).expect("same diagram")
            })
            .collect()
    }

    /// Parses a dimension vector written as `{"1": 2, "2": 1}` or a positional list.
    pub fn parse_dimvector(&self, v: &serde_json::Value) -> Result<DimVector> {
        let n = self.num_vertices();
        let as_u32 = |x: &serde_json::Value| {
            x.as_u64()
                .map(|u| u as u32)
                .ok_or_else(|| Error::Parse(format!("bad dimension entry {x}")))
        };
        match v {
            serde_json::Value::Array(xs) if xs.len() == n => {
                Ok(DimVector(xs.iter().map(as_u32).collect::<Result<_>>()?))
            }
            serde_json::Value::Object(m) => {
                let mut d = vec![0; n];
                for (k, x) in m {
                    d[self.index(k)?] = as_u32(x)?;
                }
                Ok(DimVector(d))
            }
            _ => Err(Error::Parse(format!("bad dimension vector {v}"))),
        }
    }

    /// Root or dimension vector name such as `a1+a2` or `a1+2a2+a3`.
    pub fn dv_name(&self, d: &DimVector) -> String {
        if d.is_zero() {
            return "0".into();
        }
        d.0.iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| {
                if c == 1 {
                    format!("a{}", self.labels[i])
                } else {
                    format!("{c}a{}", self.labels[i])
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Flag type in the form `(1 2^(2))`.
    pub fn flag_name(&self, y: &FlagType) -> String {
        let parts: Vec<String> = y
            .steps
            .iter()
            .map(|&(i, a)| {
                if a == 1 {
                    self.labels[i].clone()
                } else {
                    format!("{}^({a})", self.labels[i])
                }
            })
            .collect();
        format!("({})", parts.join(" "))
    }

    /// Parses a flag type written as `(1 2^(2) 1)`.
    pub fn parse_flag(&self, s: &str) -> Result<FlagType> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut steps = Vec::new();
        for tok in body.split_whitespace() {
            let (lab, a) = match tok.split_once('^') {
                Some((l, e)) => {
                    let e = e.trim_start_matches('(').trim_end_matches(')');
                    let a: u32 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok}")))?;
                    (l, a)
                }
                None => (tok, 1),
            };
            if a == 0 {
                return Err(Error::Parse(format!("zero step in {tok}")));
            }
            steps.push((self.index(lab)?, a));
        }
        Ok(FlagType { steps })
    }
}

fn classify(n: usize, arrows: &[(usize, usize)], labels: &[String]) -> Result<Vec<DynkinType>> {
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in arrows {
        if adj[s].contains(&t) {
            return Err(Error::InvalidQuiver(format!(
                "multiple edges between {} and {}",
                labels[s], labels[t]
            )));
        }
        adj[s].push(t);
        adj[t].push(s);
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut verts = vec![start];
        comp[start] = start;
        let mut k = 0;
        while k < verts.len() {
            let v = verts[k];
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = start;
                    verts.push(w);
                }
            }
            k += 1;
        }
        let edges: usize = verts.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
        if edges + 1 != verts.len() {
            return Err(Error::InvalidQuiver("underlying graph has a cycle".into()));
        }
        out.push(classify_tree(&verts, &adj)?);
    }
    Ok(out)
}

fn classify_tree(verts: &[usize], adj: &[Vec<usize>]) -> Result<DynkinType> {
    let n = verts.len();
    let branch: Vec<usize> = verts.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
    if branch.is_empty() {
        return Ok(DynkinType::A(n));
    }
    let not_dynkin = || Error::InvalidQuiver("underlying graph is not of type ADE".into());
    if branch.len() > 1 || adj[branch[0]].len() > 3 {
        return Err(not_dynkin());
    }
    let c = branch[0];
    let mut arms: Vec<usize> = adj[c]
        .iter()
        .map(|&first| {
            let (mut prev, mut cur, mut len) = (c, first, 1);
            while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort();
    match (arms[0], arms[1], arms[2]) {
        (1, 1, _) => Ok(DynkinType::D(n)),
        (1, 2, 2) | (1, 2, 3) | (1, 2, 4) => Ok(DynkinType::E(n)),
        _ => Err(not_dynkin()),
    }
}

/// A dimension vector `nu`, indexed by vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    pub fn scaled(&self, k: u32) -> Self {
        DimVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All nonzero dimension vectors with `|nu| <= cap`, ordered by size then lexicographically.
pub fn dim_vectors_up_to(n: usize, cap: u32) -> Vec<DimVector> {
    let mut out = Vec::new();
    for total in 1..=cap {
        let mut cur = vec![0u32; n];
        compositions(total, 0, &mut cur, &mut out);
    }
    out
}

fn compositions(rest: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<DimVector>) {
    if pos + 1 == cur.len() {
        cur[pos] = rest;
        out.push(DimVector(cur.clone()));
        return;
    }
    for v in (0..=rest).rev() {
        cur[pos] = v;
        compositions(rest - v, pos + 1, cur, out);
    }
}

/// A flag type `y = (i_1^(a_1) ... i_k^(a_k))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct FlagType {
    pub steps: Vec<(usize, u32)>,
}

impl FlagType {
    /// A sequence in `I^nu` (all steps of size one).
    pub fn from_seq(seq: &[usize]) -> Self {
        FlagType {
            steps: seq.iter().map(|&i| (i, 1)).collect(),
        }
    }

    pub fn weight(&self, n: usize) -> DimVector {
        let mut v = vec![0; n];
        for &(i, a) in &self.steps {
            v[i] += a;
        }
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.steps.iter().map(|s| s.1).sum()
    }

    pub fn sizes(&self) -> Vec<u32> {
        self.steps.iter().map(|s| s.1).collect()
    }

    pub fn is_sequence(&self) -> bool {
        self.steps.iter().all(|s| s.1 == 1)
    }

    /// `(i^(a) ...)` becomes `(i^a ...)`, returned as a plain vertex sequence.
    pub fn expansion(&self) -> Vec<usize> {
        self.steps
            .iter()
            .flat_map(|&(i, a)| std::iter::repeat(i).take(a as usize))
            .collect()
    }

    pub fn expanded(&self) -> FlagType {
        FlagType::from_seq(&self.expansion())
    }

    /// The step-`r` dimension vectors `v^0 = 0, v^1, ..., v^k = nu`.
    pub fn partial_dims(&self, n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; n]];
        for &(i, a) in &self.steps {
            let mut next = out.last().unwrap().clone();
            next[i] += a;
            out.push(next);
        }
        out
    }
}

/// Every flag type of weight `nu`, deduplicated, in a canonical order.
pub fn enumerate_flag_types(nu: &DimVector, cap: usize) -> Result<Vec<FlagType>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut rest = nu.0.clone();
    flag_rec(&mut rest, &mut cur, &mut out, cap)?;
    Ok(out)
}

fn flag_rec(
    rest: &mut Vec<u32>,
    cur: &mut Vec<(usize, u32)>,
    out: &mut Vec<FlagType>,
    cap: usize,
) -> Result<()> {
    if rest.iter().all(|&x| x == 0) {
        if out.len() >= cap {
            return Err(Error::BudgetExceeded(format!("more than {cap} flag types")));
        }
        out.push(FlagType { steps: cur.clone() });
        return Ok(());
    }
    for i in 0..rest.len() {
        let avail = rest[i];
        for a in 1..=avail {
            rest[i] -= a;
            cur.push((i, a));
            flag_rec(rest, cur, out, cap)?;
            cur.pop();
            rest[i] += a;
        }
    }
    Ok(())
}

/// All sequences in `I^nu`.
pub fn sequences(nu: &DimVector) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest = nu.0.clone();
    let mut cur = Vec::new();
    fn rec(rest: &mut Vec<u32>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            if rest[i] > 0 {
                rest[i] -= 1;
                cur.push(i);
                rec(rest, cur, out);
                cur.pop();
                rest[i] += 1;
            }
        }
    }
    rec(&mut rest, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symform_examples() {
        let a2 = QuiverData::a(2);
        assert_eq!(a2.symform(0, 1), -1);
        assert_eq!(a2.symform(1, 1), 2);
        let a3 = QuiverData::a(3);
        assert_eq!(a3.symform(0, 2), 0);
        assert!(a3.symform_labels("1", "9").is_err());
    }

    #[test]
    fn validation() {
        let l = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        assert!(QuiverData::new("", l(3), vec![(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(QuiverData::new("", l(2), vec![(0, 1), (1, 0)]).is_err());
        assert!(QuiverData::new("", l(1), vec![(0, 0)]).is_err());
        // affine D4~
        assert!(QuiverData::new("", l(5), vec![(1, 0), (2, 0), (3, 0), (4, 0)]).is_err());
        // E6~ arms (2,2,2)
        let arms = vec![(1, 0), (2, 1), (3, 0), (4, 3), (5, 0), (6, 5)];
        assert!(QuiverData::new("", l(7), arms).is_err());
        assert!(QuiverData::new("A3", l(3), vec![(0, 1), (2, 1)]).is_ok());
        assert!(QuiverData::new("A4", l(3), vec![(0, 1), (2, 1)]).is_err());
        assert_eq!(QuiverData::e(8).type_name(), "E8");
        assert_eq!(QuiverData::d(5).type_name(), "D5");
        assert_eq!(QuiverData::new("", l(3), vec![(0, 1)]).unwrap().type_name(), "A2+A1");
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"type":"D4","vertices":[0,1,2,3],"arrows":[{"from":1,"to":0},{"from":2,"to":0},{"from":3,"to":0}]}"#;
        let q = QuiverData::from_json_str(src).unwrap();
        assert_eq!(q, QuiverData::d4_subspace());
        let back = QuiverData::from_json_str(&q.to_json().to_string()).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn flag_types() {
        let a1 = QuiverData::a(1);
        let ys = enumerate_flag_types(&DimVector(vec![2]), 100).unwrap();
        let names: Vec<String> = ys.iter().map(|y| a1.flag_name(y)).collect();
        assert_eq!(names, vec!["(1 1)", "(1^(2))"]);
        assert_eq!(enumerate_flag_types(&DimVector(vec![1]), 10).unwrap().len(), 1);
        let a2 = QuiverData::a(2);
        let y = a2.parse_flag("(1^(2) 2)").unwrap();
        assert_eq!(y.expansion(), vec![0, 0, 1]);
        assert_eq!(a2.flag_name(&y), "(1^(2) 2)");
        assert!(enumerate_flag_types(&DimVector(vec![3, 3]), 5).is_err());
    }

    #[test]
    fn flag_types_are_distinct_and_complete() {
        // |Y_nu| for nu = (2,1): compositions of the multiset {1,1,2} into labelled blocks
        let ys = enumerate_flag_types(&DimVector(vec![2, 1]), 1000).unwrap();
        let set: std::collections::HashSet<_> = ys.iter().cloned().collect();
        assert_eq!(set.len(), ys.len());
        // sequences: 112,121,211; with a 2-block: (1^2 2),(2 1^2); mixed: none else
        assert_eq!(ys.len(), 5);
        assert_eq!(sequences(&DimVector(vec![2, 1])).len(), 3);
    }

    #[test]
    fn dim_vectors() {
        let v = dim_vectors_up_to(2, 2);
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], DimVector(vec![1, 0]));
    }
}
