//! Split structures: dendriform, tridendriform and NS trusses, di- and
//! tri-trusses, and their ring-side counterparts.
//!
//! A structure carries an addition table, a set of named binary tables and,
//! for dendriform structures and every ring-side structure, a distinguished
//! zero. Truss-side structures read the addition as the retract at `0` of the
//! heap; ring-side structures read it as a group with identity `zero`. Both
//! recover the same bracket `[a, b, c] = a - b + c`.
//!
//! The combined product of a dendriform, tridendriform or NS structure is
//! `[x > y, m(x, y), x < y]` with middle term `0`, `x v y` or `x ⋎ y`.
//! On the ring side this reads `x > y - m(x, y) + x < y`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heap::{group_identity, FiniteHeap};
use crate::operators::{check_operator, check_rb_ring, EndoMap, OperatorKind};
use crate::report::ValidationReport;
use crate::table::Table;
use crate::truss::{FiniteRing, FiniteTruss};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Truss,
    Ring,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitKind {
    Dendriform,
    Tridendriform,
    #[serde(alias = "NS")]
    Ns,
    Di,
    Tri,
}

impl SplitKind {
    pub const ALL: [SplitKind; 5] =
        [SplitKind::Dendriform, SplitKind::Tridendriform, SplitKind::Ns, SplitKind::Di, SplitKind::Tri];

    pub fn table_names(self) -> &'static [&'static str] {
        match self {
            SplitKind::Dendriform => &["succ", "prec"],
            SplitKind::Tridendriform => &["succ", "vee", "prec"],
            SplitKind::Ns => &["succ", "curlyvee", "prec"],
            SplitKind::Di => &["vdash", "dashv"],
            SplitKind::Tri => &["vdash", "dashv", "bot"],
        }
    }

    /// Whether the kind has a combined product.
    pub fn has_subadjacent(self) -> bool {
        matches!(self, SplitKind::Dendriform | SplitKind::Tridendriform | SplitKind::Ns)
    }
}

impl fmt::Display for SplitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitKind::Dendriform => "dendriform",
            SplitKind::Tridendriform => "tridendriform",
            SplitKind::Ns => "ns",
            SplitKind::Di => "di",
            SplitKind::Tri => "tri",
        })
    }
}

impl FromStr for SplitKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SplitKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameters(format!("unknown structure kind {s:?}")))
    }
}

#[derive(Serialize, Deserialize)]
struct RawSplit {
    side: Side,
    kind: SplitKind,
    size: usize,
    add: Table,
    tables: BTreeMap<String, Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    zero: Option<usize>,
}

/// Well-formed but not necessarily valid: shapes, names and the addition are
/// checked on construction, the axioms by [`validate_structure`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSplit", into = "RawSplit")]
pub struct SplitStructure {
    side: Side,
    kind: SplitKind,
    add: Table,
    heap: FiniteHeap,
    tables: BTreeMap<String, Table>,
    zero: Option<usize>,
}

impl TryFrom<RawSplit> for SplitStructure {
    type Error = Error;

    fn try_from(raw: RawSplit) -> Result<Self> {
        if raw.add.size() != raw.size {
            return Err(Error::SizeMismatch { left: raw.size, right: raw.add.size() });
        }
        SplitStructure::new(raw.side, raw.kind, raw.add, raw.tables, raw.zero)
    }
}

impl From<SplitStructure> for RawSplit {
    fn from(s: SplitStructure) -> Self {
        RawSplit { side: s.side, kind: s.kind, size: s.add.size(), add: s.add, tables: s.tables, zero: s.zero }
    }
}

impl SplitStructure {
    /// `zero` is required for truss-side dendriform structures and ignored
    /// by the other truss-side kinds. On the ring side it defaults to the
    /// identity of `add` and must equal it when given.
    pub fn new(
        side: Side,
        kind: SplitKind,
        add: Table,
        tables: BTreeMap<String, Table>,
        zero: Option<usize>,
    ) -> Result<Self> {
        let n = add.size();
        let identity = group_identity(&add)?;
        let names: Vec<&str> = tables.keys().map(String::as_str).collect();
        let mut expected = kind.table_names().to_vec();
        expected.sort_unstable();
        if names != expected {
            return Err(Error::Malformed(format!("{kind} expects tables {expected:?}, got {names:?}")));
        }
        if let Some(t) = tables.values().find(|t| t.size() != n) {
            return Err(Error::SizeMismatch { left: n, right: t.size() });
        }
        let zero = match (side, kind) {
            (Side::Ring, _) => match zero {
                Some(z) if z != identity => {
                    return Err(Error::Malformed(format!("ring zero {z} is not the additive identity {identity}")))
                }
                _ => Some(identity),
            },
            (Side::Truss, SplitKind::Dendriform) => {
                let z = zero.ok_or_else(|| Error::Malformed("a dendriform truss needs a zero".into()))?;
                if z >= n {
                    return Err(Error::IndexOutOfRange { index: z, size: n });
                }
                Some(z)
            }
            (Side::Truss, _) => None,
        };
        let heap = FiniteHeap::from_group(add.clone())?;
        let add = match side {
            Side::Truss => heap.add_table().clone(),
            Side::Ring => add,
        };
        Ok(Self { side, kind, add, heap, tables, zero })
    }

    /// A structure from tables given in the order of [`SplitKind::table_names`].
    pub fn from_tables(
        side: Side,
        kind: SplitKind,
        add: Table,
        tables: Vec<Table>,
        zero: Option<usize>,
    ) -> Result<Self> {
        let names = kind.table_names();
        if tables.len() != names.len() {
            return Err(Error::Malformed(format!("{kind} expects {} tables, got {}", names.len(), tables.len())));
        }
        let map = names.iter().map(|s| s.to_string()).zip(tables).collect();
        Self::new(side, kind, add, map, zero)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn kind(&self) -> SplitKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.add.size()
    }

    pub fn add_table(&self) -> &Table {
        &self.add
    }

    pub fn heap(&self) -> &FiniteHeap {
        &self.heap
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn tables(&self) -> &BTreeMap<String, Table> {
        &self.tables
    }

    /// Panics on a name the kind does not carry.
    pub fn table(&self, name: &str) -> &Table {
        &self.tables[name]
    }

    fn middle(&self, x: usize, y: usize) -> usize {
        match self.kind {
            SplitKind::Dendriform => self.zero.expect("dendriform zero"),
            SplitKind::Tridendriform => self.table("vee").get(x, y),
            SplitKind::Ns => self.table("curlyvee").get(x, y),
            SplitKind::Di | SplitKind::Tri => unreachable!("no combined product"),
        }
    }

    fn combined(&self, x: usize, y: usize) -> usize {
        self.heap.bracket(self.table("succ").get(x, y), self.middle(x, y), self.table("prec").get(x, y))
    }

    /// The combined product table, for kinds that have one.
    pub fn combined_table(&self) -> Result<Table> {
        if !self.kind.has_subadjacent() {
            return Err(Error::Unsupported(format!("{} structures have no combined product", self.kind)));
        }
        Ok(Table::from_fn(self.size(), |x, y| self.combined(x, y)))
    }
}

fn check_distributivity(s: &SplitStructure, report: &mut ValidationReport) {
    let n = s.size();
    let heap = &s.heap;
    let dendriform_truss = s.side == Side::Truss && s.kind == SplitKind::Dendriform;
    for (name, t) in &s.tables {
        for (arg, flipped) in [("left", true), ("right", false)] {
            let tag = match (dendriform_truss, name.as_str(), arg) {
                (true, "succ", "left") | (true, "prec", "right") => "dend2".to_string(),
                _ => format!("dist({name},{arg})"),
            };
            let at = |fixed: usize, v: usize| if flipped { t.get(v, fixed) } else { t.get(fixed, v) };
            for fixed in 0..n {
                for u in 0..n {
                    for w in 0..n {
                        let lhs = match s.side {
                            Side::Truss => at(fixed, heap.add(u, w)),
                            Side::Ring => at(fixed, s.add.get(u, w)),
                        };
                        match s.side {
                            Side::Truss => {
                                let args = if flipped { [u, 0, w, fixed] } else { [fixed, u, 0, w] };
                                let rhs = heap.bracket(at(fixed, u), at(fixed, 0), at(fixed, w));
                                report.check(&tag, &args, lhs, rhs);
                            }
                            Side::Ring => {
                                let args = if flipped { [u, w, fixed] } else { [fixed, u, w] };
                                report.check(&tag, &args, lhs, s.add.get(at(fixed, u), at(fixed, w)));
                            }
                        }
                    }
                }
            }
        }
    }
}

type Law<'a> = (&'static str, Box<dyn Fn(usize, usize, usize) -> (usize, usize) + 'a>);

fn axioms(s: &SplitStructure) -> Vec<Law<'_>> {
    let t = |name: &'static str| {
        let table = s.table(name);
        move |a: usize, b: usize| table.get(a, b)
    };
    let mut laws: Vec<Law<'_>> = Vec::new();
    match s.kind {
        SplitKind::Dendriform | SplitKind::Tridendriform | SplitKind::Ns => {
            let (succ, prec) = (t("succ"), t("prec"));
            let star = move |a, b| s.combined(a, b);
            let tag = |d: &'static str, tr: &'static str, ns: &'static str| match s.kind {
                SplitKind::Dendriform => d,
                SplitKind::Tridendriform => tr,
                _ => ns,
            };
            laws.push((tag("dend5", "tri1", "NS1"), Box::new(move |x, y, z| (prec(prec(x, y), z), prec(x, star(y, z))))));
            laws.push((tag("dend4", "tri2", "NS2"), Box::new(move |x, y, z| (prec(succ(x, y), z), succ(x, prec(y, z))))));
            laws.push((tag("dend3", "tri3", "NS3"), Box::new(move |x, y, z| (succ(star(x, y), z), succ(x, succ(y, z))))));
            match s.kind {
                SplitKind::Tridendriform => {
                    let vee = t("vee");
                    laws.push(("tri4", Box::new(move |x, y, z| (vee(succ(x, y), z), succ(x, vee(y, z))))));
                    laws.push(("tri5", Box::new(move |x, y, z| (vee(prec(x, y), z), vee(x, succ(y, z))))));
                    laws.push(("tri6", Box::new(move |x, y, z| (prec(vee(x, y), z), vee(x, prec(y, z))))));
                    laws.push(("tri7", Box::new(move |x, y, z| (vee(vee(x, y), z), vee(x, vee(y, z))))));
                }
                SplitKind::Ns if s.side == Side::Truss => {
                    let cv = t("curlyvee");
                    laws.push(("NS4", Box::new(move |x, y, z| (prec(cv(x, y), z), succ(x, cv(y, z))))));
                    laws.push(("NS5", Box::new(move |x, y, z| (cv(star(x, y), z), cv(x, star(y, z))))));
                }
                SplitKind::Ns => {
                    let cv = t("curlyvee");
                    let add = move |a, b| s.add.get(a, b);
                    laws.push((
                        "NS-ring",
                        Box::new(move |x, y, z| {
                            (add(prec(cv(x, y), z), cv(star(x, y), z)), add(succ(x, cv(y, z)), cv(x, star(y, z))))
                        }),
                    ));
                }
                _ => {}
            }
        }
        SplitKind::Di | SplitKind::Tri => {
            let (vd, dv) = (t("vdash"), t("dashv"));
            laws.push(("assoc(vdash)", Box::new(move |x, y, z| (vd(vd(x, y), z), vd(x, vd(y, z))))));
            laws.push(("assoc(dashv)", Box::new(move |x, y, z| (dv(dv(x, y), z), dv(x, dv(y, z))))));
            laws.push(("axiom3", Box::new(move |x, y, z| (vd(dv(x, y), z), vd(x, vd(y, z))))));
            laws.push(("axiom4", Box::new(move |x, y, z| (dv(dv(x, y), z), dv(x, vd(y, z))))));
            laws.push(("axiom5", Box::new(move |x, y, z| (dv(vd(x, y), z), vd(x, dv(y, z))))));
            if s.kind == SplitKind::Tri {
                let bot = t("bot");
                laws.push(("assoc(bot)", Box::new(move |x, y, z| (bot(bot(x, y), z), bot(x, bot(y, z))))));
                laws.push(("axiom6", Box::new(move |x, y, z| (dv(dv(x, y), z), dv(x, bot(y, z))))));
                laws.push(("axiom7", Box::new(move |x, y, z| (dv(bot(x, y), z), bot(x, dv(y, z))))));
                laws.push(("axiom8", Box::new(move |x, y, z| (bot(dv(x, y), z), bot(x, vd(y, z))))));
                laws.push(("axiom9", Box::new(move |x, y, z| (bot(vd(x, y), z), vd(x, bot(y, z))))));
                laws.push(("axiom10", Box::new(move |x, y, z| (vd(bot(x, y), z), vd(x, vd(y, z))))));
            }
        }
    }
    laws
}

/// Checks every axiom of the structure's kind and side over all triples,
/// together with distributivity of every table: over the bracket on the
/// truss side, over addition on the ring side.
pub fn validate_structure(s: &SplitStructure) -> ValidationReport {
    let n = s.size();
    let mut report = ValidationReport::new();
    if s.kind == SplitKind::Dendriform {
        let z = s.zero.expect("dendriform zero");
        let (succ, prec) = (s.table("succ"), s.table("prec"));
        for x in 0..n {
            report.check("dend1", &[x], succ.get(x, z), z);
            report.check("dend1", &[x], prec.get(z, x), z);
            if s.side == Side::Truss {
                report.check("dend1", &[x], succ.get(z, x), z);
                report.check("dend1", &[x], prec.get(x, z), z);
            }
        }
    }
    check_distributivity(s, &mut report);
    for (tag, f) in axioms(s) {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (lhs, rhs) = f(x, y, z);
                    report.check(tag, &[x, y, z], lhs, rhs);
                }
            }
        }
    }
    report
}

fn validated(s: SplitStructure) -> Result<SplitStructure> {
    let report = validate_structure(&s);
    if report.is_valid() {
        Ok(s)
    } else {
        Err(Error::InvalidStructure(report))
    }
}

fn require_operator(t: &FiniteTruss, f: &EndoMap, kind: OperatorKind) -> Result<()> {
    let report = check_operator(t, f, kind)?;
    if report.holds {
        Ok(())
    } else {
        Err(Error::OperatorCheckFailed(format!("not a {kind} operator: {:?}", report.failure)))
    }
}

/// The truss on the same heap induced by an operator:
/// `[R(x)y, 0, xR(y)]` (weight 0), `[R(x)y, a.x.y, xR(y)]` (weight `a`),
/// `[R(x)y, xy, xR(y)]` (weight 1), `[P(x)y, P(x)P(y), xP(y)]` (Reynolds),
/// `[N(x)y, N(xy), xN(y)]` (Nijenhuis).
pub fn derive_truss(t: &FiniteTruss, f: &EndoMap, kind: OperatorKind) -> Result<FiniteTruss> {
    require_operator(t, f, kind)?;
    let m = |a, b| t.mul(a, b);
    let middle: Box<dyn Fn(usize, usize) -> usize + '_> = match kind {
        OperatorKind::RotaBaxterZero { zero } => Box::new(move |_, _| zero),
        OperatorKind::RotaBaxterWeighted { weight } => Box::new(move |x, y| m(m(weight, x), y)),
        OperatorKind::RotaBaxterOne => Box::new(m),
        OperatorKind::Reynolds => Box::new(|x, y| m(f.apply(x), f.apply(y))),
        OperatorKind::Nijenhuis => Box::new(|x, y| f.apply(m(x, y))),
        other => return Err(Error::Unsupported(format!("no derived truss for {other}"))),
    };
    let table = Table::from_fn(t.size(), |x, y| t.bracket(m(f.apply(x), y), middle(x, y), m(x, f.apply(y))));
    FiniteTruss::new(t.heap().clone(), table)
}

/// The split structure an operator induces on `t`:
/// weight 0 gives a dendriform truss with zero the absorber; weight `a`
/// (and weight 1, with `v = .`) a tridendriform truss; Reynolds and
/// Nijenhuis operators NS-trusses; averaging operators di-trusses; and
/// homomorphic averaging operators tri-trusses with `⊥ = .`.
///
/// The output is validated. Nijenhuis operators can fail NS4/NS5 (which
/// demand `N(xy) N(z) = N(x) N(yz)` and its twin); those come back as
/// `InvalidStructure` with the witnesses. [`split_from_operator_unchecked`]
/// returns the tables regardless.
pub fn split_from_operator(t: &FiniteTruss, f: &EndoMap, kind: OperatorKind) -> Result<SplitStructure> {
    validated(split_from_operator_unchecked(t, f, kind)?)
}

/// The tables of [`split_from_operator`] without checking the axioms.
pub fn split_from_operator_unchecked(t: &FiniteTruss, f: &EndoMap, kind: OperatorKind) -> Result<SplitStructure> {
    require_operator(t, f, kind)?;
    let n = t.size();
    let m = |a, b| t.mul(a, b);
    let left = Table::from_fn(n, |x, y| m(f.apply(x), y));
    let right = Table::from_fn(n, |x, y| m(x, f.apply(y)));
    let (split, tables, zero) = match kind {
        OperatorKind::RotaBaxterZero { zero } => (SplitKind::Dendriform, vec![left, right], Some(zero)),
        OperatorKind::RotaBaxterWeighted { weight } => {
            let vee = Table::from_fn(n, |x, y| m(m(weight, x), y));
            (SplitKind::Tridendriform, vec![left, vee, right], None)
        }
        OperatorKind::RotaBaxterOne => (SplitKind::Tridendriform, vec![left, t.mul_table().clone(), right], None),
        OperatorKind::Reynolds => {
            let cv = Table::from_fn(n, |x, y| m(f.apply(x), f.apply(y)));
            (SplitKind::Ns, vec![left, cv, right], None)
        }
        OperatorKind::Nijenhuis => {
            let cv = Table::from_fn(n, |x, y| f.apply(m(x, y)));
            (SplitKind::Ns, vec![left, cv, right], None)
        }
        OperatorKind::Averaging => (SplitKind::Di, vec![left, right], None),
        OperatorKind::HomomorphicAveraging => (SplitKind::Tri, vec![left, right, t.mul_table().clone()], None),
        other => return Err(Error::Unsupported(format!("no split structure for {other}"))),
    };
    SplitStructure::from_tables(Side::Truss, split, t.heap().add_table().clone(), tables, zero)
}

/// `(x ⋎ y) < z + (x • y) ⋎ z = x > (y ⋎ z) + x ⋎ (y • z)`, read in the
/// heap as `[A, e, B] = [C, e, D]` (independent of `e`). This is the sum of
/// NS4 and NS5 and the only mixed axiom of an NS-ring.
pub fn validate_ns_combined(s: &SplitStructure) -> Result<ValidationReport> {
    if s.kind != SplitKind::Ns {
        return Err(Error::Unsupported(format!("combined NS axiom on a {} structure", s.kind)));
    }
    let n = s.size();
    let (succ, cv, prec) = (s.table("succ"), s.table("curlyvee"), s.table("prec"));
    let h = &s.heap;
    let mut report = ValidationReport::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = h.add(prec.get(cv.get(x, y), z), cv.get(s.combined(x, y), z));
                let rhs = h.add(succ.get(x, cv.get(y, z)), cv.get(x, s.combined(y, z)));
                report.check("NS-combined", &[x, y, z], lhs, rhs);
            }
        }
    }
    Ok(report)
}

/// The truss with the combined product of a valid truss-side structure.
pub fn subadjacent(s: &SplitStructure) -> Result<FiniteTruss> {
    if s.side != Side::Truss {
        return Err(Error::Unsupported("subadjacent truss of a ring-side structure".into()));
    }
    let table = s.combined_table()?;
    validated(s.clone())?;
    FiniteTruss::new(s.heap.clone(), table)
}

/// The ring with the combined product of a valid ring-side structure.
pub fn subadjacent_ring(s: &SplitStructure) -> Result<FiniteRing> {
    if s.side != Side::Ring {
        return Err(Error::Unsupported("subadjacent ring of a truss-side structure".into()));
    }
    let table = s.combined_table()?;
    validated(s.clone())?;
    FiniteRing::new(s.add.clone(), table)
}

/// Reads a truss-side structure as a ring-side one with `x + y = [x, z, y]`.
/// `z` must absorb every table on both sides.
pub fn truss_side_to_ring_side(s: &SplitStructure, z: usize) -> Result<SplitStructure> {
    if s.side != Side::Truss {
        return Err(Error::Unsupported("structure is already ring-side".into()));
    }
    s.heap.check_index(z)?;
    let n = s.size();
    let absorbs = s.tables.values().all(|t| (0..n).all(|x| t.get(x, z) == z && t.get(z, x) == z));
    if !absorbs || s.zero.is_some_and(|zero| zero != z) {
        return Err(Error::NotAnAbsorber(z));
    }
    let add = s.heap.retract(z)?;
    validated(SplitStructure::new(Side::Ring, s.kind, add, s.tables.clone(), Some(z))?)
}

/// Reads a ring-side structure as a truss-side one with `[x, y, z] = x - y + z`.
/// Dendriform structures keep the ring zero as their distinguished element.
pub fn ring_side_to_truss_side(s: &SplitStructure) -> Result<SplitStructure> {
    if s.side != Side::Ring {
        return Err(Error::Unsupported("structure is already truss-side".into()));
    }
    let zero = if s.kind == SplitKind::Dendriform { s.zero } else { None };
    validated(SplitStructure::new(Side::Truss, s.kind, s.add.clone(), s.tables.clone(), zero)?)
}

/// `x > y = R(x) y`, `x < y = x R(y)` for a Rota-Baxter operator on a ring.
pub fn dendriform_ring_from_rb_ring(r: &FiniteRing, f: &EndoMap) -> Result<SplitStructure> {
    if !check_rb_ring(r, f)?.holds {
        return Err(Error::NotRbRing);
    }
    let n = r.size();
    let succ = Table::from_fn(n, |x, y| r.mul(f.apply(x), y));
    let prec = Table::from_fn(n, |x, y| r.mul(x, f.apply(y)));
    validated(SplitStructure::from_tables(
        Side::Ring,
        SplitKind::Dendriform,
        r.add_table().clone(),
        vec![succ, prec],
        Some(r.zero()),
    )?)
}
