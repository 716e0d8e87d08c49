use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use cohom::Provenance;
use ring::Weights;
use serde::{Deserialize, Serialize};

/// A building block of the resolutions: `O(l)` or `Ω^j(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SheafKind {
    LineBundle { l: i64 },
    OmegaTwist { j: usize, t: i64 },
}

impl SheafKind {
    pub fn line(l: i64) -> Self {
        SheafKind::LineBundle { l }
    }

    pub fn omega(j: usize, t: i64) -> Self {
        SheafKind::OmegaTwist { j, t }
    }

    /// `Ω^0(t) = O(t)` and `Ω^n(t) = O(t − |w|)`.
    pub fn normalized(self, w: &Weights) -> Self {
        match self {
            SheafKind::OmegaTwist { j: 0, t } => SheafKind::line(t),
            SheafKind::OmegaTwist { j, t } if j == w.n() => SheafKind::line(t - w.total()),
            k => k,
        }
    }

    /// `G^∨(s)`, using `Ω^j(t)^∨ = Ω^{n−j}(|w| − t)`.
    pub fn dual(self, w: &Weights, s: i64) -> Self {
        match self {
            SheafKind::LineBundle { l } => SheafKind::line(s - l),
            SheafKind::OmegaTwist { j, t } => SheafKind::omega(w.n() - j, w.total() - t + s),
        }
    }

    pub fn rank(self, w: &Weights) -> u64 {
        match self {
            SheafKind::LineBundle { .. } => 1,
            SheafKind::OmegaTwist { j, .. } => binomial(w.n() as u64, j as u64),
        }
    }

    /// First Chern class, in units of `O(1)`.
    pub fn c1(self, w: &Weights) -> i64 {
        match self {
            SheafKind::LineBundle { l } => l,
            SheafKind::OmegaTwist { j: 0, t } => t,
            SheafKind::OmegaTwist { j, t } => {
                let n = w.n() as u64;
                binomial(n, j as u64) as i64 * t - binomial(n - 1, j as u64 - 1) as i64 * w.total()
            }
        }
    }

    fn sort_key(&self) -> (u8, i64, i64) {
        match *self {
            SheafKind::OmegaTwist { j, t } => (0, -(j as i64), -t),
            SheafKind::LineBundle { l } => (1, -l, 0),
        }
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl Ord for SheafKind {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sort_key().cmp(&o.sort_key())
    }
}

impl PartialOrd for SheafKind {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for SheafKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafKind::LineBundle { l } => write!(f, "O({l})"),
            SheafKind::OmegaTwist { j, t } => write!(f, "Omega^{j}({t})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub sheaf: SheafKind,
    pub multiplicity: u64,
    pub provenance: BTreeSet<Provenance>,
}

/// A direct sum `⊕ G^{m}` with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BundleSum {
    pub terms: BTreeMap<SheafKind, (u64, BTreeSet<Provenance>)>,
}

impl BundleSum {
    pub fn add(&mut self, sheaf: SheafKind, m: u64, prov: Option<Provenance>) {
        if m == 0 {
            return;
        }
        let e = self.terms.entry(sheaf).or_default();
        e.0 += m;
        e.1.extend(prov);
    }

    pub fn multiplicity(&self, sheaf: SheafKind) -> u64 {
        self.terms.get(&sheaf).map_or(0, |e| e.0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiset(&self) -> Vec<(SheafKind, u64)> {
        self.terms.iter().map(|(k, e)| (*k, e.0)).collect()
    }

    pub fn normalized(&self, w: &Weights) -> Self {
        self.map(|k| k.normalized(w))
    }

    pub fn dual(&self, w: &Weights, s: i64) -> Self {
        self.map(|k| k.dual(w, s))
    }

    fn map(&self, f: impl Fn(SheafKind) -> SheafKind) -> Self {
        let mut out = BundleSum::default();
        for (k, (m, p)) in &self.terms {
            let e = out.terms.entry(f(*k)).or_default();
            e.0 += m;
            e.1.extend(p.iter().copied());
        }
        out
    }

    pub fn rank(&self, w: &Weights) -> u64 {
        self.terms.iter().map(|(k, e)| k.rank(w) * e.0).sum()
    }

    pub fn c1(&self, w: &Weights) -> i64 {
        self.terms.iter().map(|(k, e)| k.c1(w) * e.0 as i64).sum()
    }

    /// Sheaf twists of the line-bundle summands, with repetition, descending.
    pub fn line_twists(&self) -> Vec<i64> {
        let mut v = Vec::new();
        for (k, e) in &self.terms {
            if let SheafKind::LineBundle { l } = k {
                v.extend(std::iter::repeat(*l).take(e.0 as usize));
            }
        }
        v
    }

    pub fn to_terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(k, (m, p))| Term { sheaf: *k, multiplicity: *m, provenance: p.clone() })
            .collect()
    }
}

impl fmt::Display for BundleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, e)| format!("{k}^{}", e.0)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Terms of a complex, position by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionTerms {
    pub name: String,
    pub positions: BTreeMap<i64, BundleSum>,
}

#[derive(Serialize, Deserialize)]
struct ResolutionDoc {
    name: String,
    positions: BTreeMap<i64, Vec<Term>>,
}

impl ResolutionTerms {
    pub fn new(name: impl Into<String>) -> Self {
        ResolutionTerms { name: name.into(), positions: BTreeMap::new() }
    }

    pub fn add(&mut self, pos: i64, sheaf: SheafKind, m: u64, prov: Option<Provenance>) {
        if m > 0 {
            self.positions.entry(pos).or_default().add(sheaf, m, prov);
        }
    }

    pub fn at(&self, pos: i64) -> BundleSum {
        self.positions.get(&pos).cloned().unwrap_or_default()
    }

    pub fn normalized(&self, w: &Weights) -> Self {
        ResolutionTerms {
            name: self.name.clone(),
            positions: self.positions.iter().map(|(p, b)| (*p, b.normalized(w))).collect(),
        }
    }

    /// `(C^∨(s))^i = (C^{−i})^∨(s)`.
    pub fn dual(&self, w: &Weights, s: i64) -> Self {
        ResolutionTerms {
            name: format!("{}^dual({s})", self.name),
            positions: self.positions.iter().map(|(p, b)| (-p, b.dual(w, s))).collect(),
        }
    }

    /// `C[k]^i = C^{i+k}`.
    pub fn shifted(&self, k: i64) -> Self {
        ResolutionTerms {
            name: format!("{}[{k}]", self.name),
            positions: self.positions.iter().map(|(p, b)| (p - k, b.clone())).collect(),
        }
    }

    pub fn multisets(&self) -> BTreeMap<i64, Vec<(SheafKind, u64)>> {
        self.positions.iter().map(|(p, b)| (*p, b.multiset())).collect()
    }

    pub fn report_lines(&self) -> Vec<String> {
        self.positions.iter().map(|(p, b)| format!("{}^{p} = {b}", self.name)).collect()
    }

    pub fn to_json(&self) -> String {
        let doc = ResolutionDoc {
            name: self.name.clone(),
            positions: self.positions.iter().map(|(p, b)| (*p, b.to_terms())).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        let doc: ResolutionDoc = serde_json::from_str(s)?;
        let mut out = ResolutionTerms::new(doc.name);
        for (p, terms) in doc.positions {
            for t in terms.into_iter().filter(|t| t.multiplicity > 0) {
                let e = out.positions.entry(p).or_default().terms.entry(t.sheaf).or_default();
                e.0 += t.multiplicity;
                e.1.extend(t.provenance);
            }
        }
        Ok(out)
    }
}
