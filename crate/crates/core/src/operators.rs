//! Rota-Baxter type operators on trusses: checking, exhaustive search and
//! the graph characterizations.
//!
//! Every operator kind is first of all a heap morphism. Searches therefore
//! enumerate heap endomorphisms as `f(x) = t +0 g(x)` with `g` additive,
//! which is far smaller than the `n^n` space of all maps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::{ensure, Limits};
use crate::products::{bowtie_table, hemisemi_table, ltimes_table, pair, product_ltimes, HemisemiSide};
use crate::table::Table;
use crate::truss::{is_closed, FiniteRing, FiniteTruss};

/// A total map on the carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EndoMap(Vec<usize>);

impl EndoMap {
    pub fn new(image: Vec<usize>, n: usize) -> Result<Self> {
        if image.len() != n {
            return Err(Error::InvalidMap(format!("map has {} values for a carrier of size {n}", image.len())));
        }
        if let Some(&v) = image.iter().find(|&&v| v >= n) {
            return Err(Error::IndexOutOfRange { index: v, size: n });
        }
        Ok(Self(image))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn constant(n: usize, c: usize) -> Self {
        Self(vec![c; n])
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Option<EndoMap> {
        let n = self.len();
        let mut inv = vec![usize::MAX; n];
        for (x, &y) in self.0.iter().enumerate() {
            if inv[y] != usize::MAX {
                return None;
            }
            inv[y] = x;
        }
        Some(EndoMap(inv))
    }

    pub fn is_bijective(&self) -> bool {
        self.inverse().is_some()
    }

    /// `perm . f . perm^-1`: the same operator seen through a relabeling.
    pub fn conjugate(&self, perm: &[usize]) -> EndoMap {
        let mut out = vec![0; self.len()];
        for (x, &y) in self.0.iter().enumerate() {
            out[perm[x]] = perm[y];
        }
        EndoMap(out)
    }
}

impl From<EndoMap> for Vec<usize> {
    fn from(f: EndoMap) -> Self {
        f.0
    }
}

/// Every `n^n` map on an `n`-element carrier, lexicographically.
pub fn all_maps(n: usize) -> impl Iterator<Item = EndoMap> {
    let total = u32::try_from(n).ok().and_then(|k| n.checked_pow(k)).expect("n^n fits in usize");
    (0..total).map(move |mut code| {
        let mut image = vec![0; n];
        for slot in image.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        EndoMap(image)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorKind {
    /// `R(x)R(y) = R[R(x)y, 0, xR(y)]` with `R(0) = 0` for an absorber `0`.
    RotaBaxterZero { zero: usize },
    /// `R(x)R(y) = R[R(x)y, a.x.y, xR(y)]` for a central weight `a`.
    RotaBaxterWeighted { weight: usize },
    /// `R(x)R(y) = R[R(x)y, xy, xR(y)]`.
    RotaBaxterOne,
    /// `D(xy) = [D(x)y, 0, xD(y)]` with `D(0) = 0`.
    Derivation { zero: usize },
    /// `D(xy) = [xD(y), xy, D(x)y]`.
    ModifiedDerivation,
    /// `P(x)P(y) = P[P(x)y, P(x)P(y), xP(y)]`.
    Reynolds,
    /// `N(x)N(y) = N[N(x)y, N(xy), xN(y)]`.
    Nijenhuis,
    /// `K(x)K(y) = K(K(x)y)`.
    AveragingLeft,
    /// `K(x)K(y) = K(xK(y))`.
    AveragingRight,
    Averaging,
    /// Averaging and a truss endomorphism.
    HomomorphicAveraging,
}

impl OperatorKind {
    /// Kinds that take no element parameter.
    pub const UNPARAMETERIZED: [OperatorKind; 8] = [
        OperatorKind::RotaBaxterOne,
        OperatorKind::ModifiedDerivation,
        OperatorKind::Reynolds,
        OperatorKind::Nijenhuis,
        OperatorKind::AveragingLeft,
        OperatorKind::AveragingRight,
        OperatorKind::Averaging,
        OperatorKind::HomomorphicAveraging,
    ];

    /// Every kind that applies to `t`: the absorber-based kinds once per
    /// two-sided absorber and the weighted kind once per central element.
    pub fn applicable(t: &FiniteTruss) -> Vec<OperatorKind> {
        let absorbers = t.absorbers().two_sided;
        let mut out = Vec::new();
        out.extend(absorbers.iter().map(|&zero| OperatorKind::RotaBaxterZero { zero }));
        out.extend(t.center().into_iter().map(|weight| OperatorKind::RotaBaxterWeighted { weight }));
        out.extend(absorbers.iter().map(|&zero| OperatorKind::Derivation { zero }));
        out.extend(Self::UNPARAMETERIZED);
        out.sort();
        out
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::RotaBaxterZero { zero } => write!(f, "rb0:{zero}"),
            OperatorKind::RotaBaxterWeighted { weight } => write!(f, "rbw:{weight}"),
            OperatorKind::RotaBaxterOne => f.write_str("rb1"),
            OperatorKind::Derivation { zero } => write!(f, "der:{zero}"),
            OperatorKind::ModifiedDerivation => f.write_str("mder"),
            OperatorKind::Reynolds => f.write_str("rey"),
            OperatorKind::Nijenhuis => f.write_str("nij"),
            OperatorKind::AveragingLeft => f.write_str("avgl"),
            OperatorKind::AveragingRight => f.write_str("avgr"),
            OperatorKind::Averaging => f.write_str("avg"),
            OperatorKind::HomomorphicAveraging => f.write_str("avgh"),
        }
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, param) = match s.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (s, None),
        };
        let element = |name: &str| -> Result<usize> {
            let p = param.ok_or_else(|| Error::InvalidParameters(format!("{name} needs an element, e.g. {name}:0")))?;
            p.parse().map_err(|_| Error::InvalidParameters(format!("bad element {p:?} in {s:?}")))
        };
        let plain = |kind: OperatorKind| -> Result<OperatorKind> {
            match param {
                None => Ok(kind),
                Some(_) => Err(Error::InvalidParameters(format!("{head} takes no parameter"))),
            }
        };
        match head {
            "rb0" => Ok(OperatorKind::RotaBaxterZero { zero: element("rb0")? }),
            "rbw" => Ok(OperatorKind::RotaBaxterWeighted { weight: element("rbw")? }),
            "der" => Ok(OperatorKind::Derivation { zero: element("der")? }),
            "rb1" => plain(OperatorKind::RotaBaxterOne),
            "mder" => plain(OperatorKind::ModifiedDerivation),
            "rey" => plain(OperatorKind::Reynolds),
            "nij" => plain(OperatorKind::Nijenhuis),
            "avgl" => plain(OperatorKind::AveragingLeft),
            "avgr" => plain(OperatorKind::AveragingRight),
            "avg" => plain(OperatorKind::Averaging),
            "avgh" => plain(OperatorKind::HomomorphicAveraging),
            _ => Err(Error::InvalidParameters(format!("unknown operator kind {s:?}"))),
        }
    }
}

impl Serialize for OperatorKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OperatorKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Why a map is not an operator of the requested kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Failure {
    /// `f([a, b, c]) != [f(a), f(b), f(c)]`
    NotHeapMorphism { args: [usize; 3] },
    /// `f(x + y) != f(x) + f(y)` in a ring
    NotAdditive { x: usize, y: usize },
    /// The designated absorber is not fixed.
    AbsorberCondition { element: usize, image: usize },
    NotTrussMorphism { x: usize, y: usize },
    Identity { law: String, x: usize, y: usize, lhs: usize, rhs: usize },
}

/// Verdict plus the first witness on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
}

impl CheckReport {
    fn pass() -> Self {
        Self { holds: true, failure: None }
    }

    fn fail(failure: Failure) -> Self {
        Self { holds: false, failure: Some(failure) }
    }
}

fn validate_kind(t: &FiniteTruss, kind: OperatorKind) -> Result<()> {
    match kind {
        OperatorKind::RotaBaxterZero { zero } | OperatorKind::Derivation { zero } => {
            t.heap().check_index(zero)?;
            if !t.is_absorber(zero) {
                return Err(Error::NotAnAbsorber(zero));
            }
        }
        OperatorKind::RotaBaxterWeighted { weight } => {
            t.heap().check_index(weight)?;
            if !t.is_central(weight) {
                return Err(Error::NotCentral(weight));
            }
        }
        _ => {}
    }
    Ok(())
}

/// Evaluates the defining identity (or identities) of `kind` at `(x, y)`,
/// returning the first one whose sides differ.
fn identity_defect(t: &FiniteTruss, f: &EndoMap, kind: OperatorKind, x: usize, y: usize) -> Option<Failure> {
    let m = |a, b| t.mul(a, b);
    let br = |a, b, c| t.bracket(a, b, c);
    let (fx, fy) = (f.apply(x), f.apply(y));
    let mut sides: [(&str, usize, usize); 2] = [("", 0, 0); 2];
    let mut count = 1;
    match kind {
        OperatorKind::RotaBaxterZero { zero } => {
            sides[0] = ("rota-baxter-0", m(fx, fy), f.apply(br(m(fx, y), zero, m(x, fy))));
        }
        OperatorKind::RotaBaxterWeighted { weight } => {
            let middle = m(m(weight, x), y);
            sides[0] = ("rota-baxter-weighted", m(fx, fy), f.apply(br(m(fx, y), middle, m(x, fy))));
        }
        OperatorKind::RotaBaxterOne => {
            sides[0] = ("rota-baxter-1", m(fx, fy), f.apply(br(m(fx, y), m(x, y), m(x, fy))));
        }
        OperatorKind::Derivation { zero } => {
            sides[0] = ("derivation", f.apply(m(x, y)), br(m(fx, y), zero, m(x, fy)));
        }
        OperatorKind::ModifiedDerivation => {
            sides[0] = ("modified-derivation", f.apply(m(x, y)), br(m(x, fy), m(x, y), m(fx, y)));
        }
        OperatorKind::Reynolds => {
            let fxfy = m(fx, fy);
            sides[0] = ("reynolds", fxfy, f.apply(br(m(fx, y), fxfy, m(x, fy))));
        }
        OperatorKind::Nijenhuis => {
            sides[0] = ("nijenhuis", m(fx, fy), f.apply(br(m(fx, y), f.apply(m(x, y)), m(x, fy))));
        }
        OperatorKind::AveragingLeft => {
            sides[0] = ("averaging-left", m(fx, fy), f.apply(m(fx, y)));
        }
        OperatorKind::AveragingRight => {
            sides[0] = ("averaging-right", m(fx, fy), f.apply(m(x, fy)));
        }
        OperatorKind::Averaging | OperatorKind::HomomorphicAveraging => {
            sides[0] = ("averaging-left", m(fx, fy), f.apply(m(fx, y)));
            sides[1] = ("averaging-right", m(fx, fy), f.apply(m(x, fy)));
            count = 2;
        }
    }
    sides[..count]
        .iter()
        .find(|(_, lhs, rhs)| lhs != rhs)
        .map(|&(law, lhs, rhs)| Failure::Identity { law: law.to_string(), x, y, lhs, rhs })
}

/// Checks `f` against the definition of `kind` on `t`.
///
/// Malformed requests (wrong map length, a designated absorber that is not
/// one, a non-central weight) are errors; everything else is a verdict.
pub fn check_operator(t: &FiniteTruss, f: &EndoMap, kind: OperatorKind) -> Result<CheckReport> {
    let n = t.size();
    EndoMap::new(f.image().to_vec(), n)?;
    validate_kind(t, kind)?;
    if let Some((a, c)) = t.heap().affine_defect(t.heap(), f.image()) {
        return Ok(CheckReport::fail(Failure::NotHeapMorphism { args: [a, 0, c] }));
    }
    if let OperatorKind::RotaBaxterZero { zero } | OperatorKind::Derivation { zero } = kind {
        if f.apply(zero) != zero {
            return Ok(CheckReport::fail(Failure::AbsorberCondition { element: zero, image: f.apply(zero) }));
        }
    }
    if kind == OperatorKind::HomomorphicAveraging {
        for x in 0..n {
            for y in 0..n {
                if f.apply(t.mul(x, y)) != t.mul(f.apply(x), f.apply(y)) {
                    return Ok(CheckReport::fail(Failure::NotTrussMorphism { x, y }));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if let Some(failure) = identity_defect(t, f, kind, x, y) {
                return Ok(CheckReport::fail(failure));
            }
        }
    }
    Ok(CheckReport::pass())
}

fn holds(t: &FiniteTruss, f: &EndoMap, kind: OperatorKind) -> Result<bool> {
    Ok(check_operator(t, f, kind)?.holds)
}

/// All operators of `kind` on `t`, lexicographically, enumerated over heap
/// endomorphisms.
pub fn search_operators(t: &FiniteTruss, kind: OperatorKind, limits: &Limits) -> Result<Vec<EndoMap>> {
    ensure(t.size(), limits.search)?;
    validate_kind(t, kind)?;
    let mut out = Vec::new();
    for image in t.heap().endomorphisms() {
        let f = EndoMap(image);
        if holds(t, &f, kind)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// The same set as [`search_operators`], by filtering all `n^n` maps.
pub fn search_operators_naive(t: &FiniteTruss, kind: OperatorKind, limits: &Limits) -> Result<Vec<EndoMap>> {
    ensure(t.size(), limits.naive)?;
    validate_kind(t, kind)?;
    let mut out = Vec::new();
    for f in all_maps(t.size()) {
        if holds(t, &f, kind)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Decides `kind` for `f` by testing whether the graph `{(f(x), x)}` is
/// closed in the matching product on `T x T`: `T ⋉ T` for weight `0`,
/// `T ⋈_a T` for weight `a`, and the hemisemi-direct products for the
/// averaging kinds. Side conditions outside the product identity (`f(0) = 0`
/// for weight `0`) are checked directly.
pub fn graph_characterization(t: &FiniteTruss, f: &EndoMap, kind: OperatorKind) -> Result<bool> {
    let n = t.size();
    EndoMap::new(f.image().to_vec(), n)?;
    validate_kind(t, kind)?;
    let tables: Vec<Table> = match kind {
        OperatorKind::RotaBaxterZero { zero } => {
            if f.apply(zero) != zero {
                return Ok(false);
            }
            vec![ltimes_table(t, zero)]
        }
        OperatorKind::RotaBaxterWeighted { weight } => vec![bowtie_table(t, weight)],
        OperatorKind::AveragingLeft => vec![hemisemi_table(t, HemisemiSide::Left)],
        OperatorKind::AveragingRight => vec![hemisemi_table(t, HemisemiSide::Right)],
        OperatorKind::Averaging => {
            vec![hemisemi_table(t, HemisemiSide::Left), hemisemi_table(t, HemisemiSide::Right)]
        }
        OperatorKind::HomomorphicAveraging => vec![
            hemisemi_table(t, HemisemiSide::Left),
            hemisemi_table(t, HemisemiSide::Right),
            hemisemi_table(t, HemisemiSide::Medium),
        ],
        other => return Err(Error::Unsupported(format!("graph characterization of {other}"))),
    };
    let square = t.heap().direct_product(t.heap());
    let graph: Vec<usize> = (0..n).map(|x| pair(n, f.apply(x), x)).collect();
    let verdict = tables
        .iter()
        .all(|table| is_closed(n * n, &graph, |a, b, c| square.bracket(a, b, c), |a, b| table.get(a, b)));
    debug_assert_eq!(verdict, holds(t, f, kind)?, "graph verdict disagrees for {kind} {f:?}");
    Ok(verdict)
}

/// `N(a, x) = (R(x), 0)` on `T ⋉ T`, for a weight-0 Rota-Baxter operator `R`.
/// Returns the product truss together with `N`.
pub fn nijenhuis_from_rb0(t: &FiniteTruss, r: &EndoMap, zero: usize, limits: &Limits) -> Result<(FiniteTruss, EndoMap)> {
    let report = check_operator(t, r, OperatorKind::RotaBaxterZero { zero })?;
    if !report.holds {
        return Err(Error::OperatorCheckFailed(format!("not a weight-0 Rota-Baxter operator: {:?}", report.failure)));
    }
    let product = product_ltimes(t, zero, limits)?;
    let n = t.size();
    let image = (0..n * n).map(|p| pair(n, r.apply(p % n), zero)).collect();
    Ok((product, EndoMap(image)))
}

/// `R(x) R(y) = R(R(x) y + x R(y))` for an additive `R` on a ring.
pub fn check_rb_ring(r: &FiniteRing, f: &EndoMap) -> Result<CheckReport> {
    let n = r.size();
    EndoMap::new(f.image().to_vec(), n)?;
    for x in 0..n {
        for y in 0..n {
            if f.apply(r.add(x, y)) != r.add(f.apply(x), f.apply(y)) {
                return Ok(CheckReport::fail(Failure::NotAdditive { x, y }));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let (fx, fy) = (f.apply(x), f.apply(y));
            let lhs = r.mul(fx, fy);
            let rhs = f.apply(r.add(r.mul(fx, y), r.mul(x, fy)));
            if lhs != rhs {
                return Ok(CheckReport::fail(Failure::Identity { law: "ring-rota-baxter".into(), x, y, lhs, rhs }));
            }
        }
    }
    Ok(CheckReport::pass())
}
