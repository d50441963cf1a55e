//! Truss products on the integer heap `[l, m, n] = l - m + n`.
//!
//! The families are infinite, so their axioms are verified over a window
//! `[-W, W]` of arguments with unbounded intermediates. A clean window is
//! evidence, not a proof.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "camelCase")]
pub enum ZFamily {
    /// `m . n = m`
    ProjL,
    /// `m . n = n`
    ProjR,
    /// `m . n = a m n`, `a >= 0`, `a != 1`
    F40a { a: i64 },
    /// `m . n = a m n + m + n`, `a >= 0`
    F40b { a: i64 },
    /// `m . n = c`, `c >= 1`
    F41a { c: i64 },
    /// `m . n = m + n + c`, `c >= 1`
    F41b { c: i64 },
    /// `m . n = a m n + b (m + n) + c` with `a >= 3`, `2 <= b < a`, `c >= 1`
    /// and `a c = b (b - 1)`
    F42 { a: i64, b: i64, c: i64 },
}

impl ZFamily {
    pub const TAGS: [&'static str; 7] = ["projL", "projR", "f40a", "f40b", "f41a", "f41b", "f42"];

    fn tag(&self) -> &'static str {
        match self {
            ZFamily::ProjL => "projL",
            ZFamily::ProjR => "projR",
            ZFamily::F40a { .. } => "f40a",
            ZFamily::F40b { .. } => "f40b",
            ZFamily::F41a { .. } => "f41a",
            ZFamily::F41b { .. } => "f41b",
            ZFamily::F42 { .. } => "f42",
        }
    }

    pub fn params(&self) -> Vec<i64> {
        match *self {
            ZFamily::ProjL | ZFamily::ProjR => vec![],
            ZFamily::F40a { a } | ZFamily::F40b { a } => vec![a],
            ZFamily::F41a { c } | ZFamily::F41b { c } => vec![c],
            ZFamily::F42 { a, b, c } => vec![a, b, c],
        }
    }
}

impl fmt::Display for ZFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        if params.is_empty() {
            f.write_str(self.tag())
        } else {
            let joined: Vec<String> = params.iter().map(i64::to_string).collect();
            write!(f, "{}({})", self.tag(), joined.join(","))
        }
    }
}

/// A validated member of one of the families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ZFamily", into = "ZFamily")]
pub struct ZTruss {
    family: ZFamily,
}

impl TryFrom<ZFamily> for ZTruss {
    type Error = Error;

    fn try_from(family: ZFamily) -> Result<Self> {
        ZTruss::new(family)
    }
}

impl From<ZTruss> for ZFamily {
    fn from(z: ZTruss) -> Self {
        z.family
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

impl ZTruss {
    pub fn new(family: ZFamily) -> Result<Self> {
        match family {
            ZFamily::ProjL | ZFamily::ProjR => {}
            ZFamily::F40a { a } => {
                if a < 0 || a == 1 {
                    return Err(invalid(format!("f40a needs a >= 0 and a != 1, got a = {a}")));
                }
            }
            ZFamily::F40b { a } => {
                if a < 0 {
                    return Err(invalid(format!("f40b needs a >= 0, got a = {a}")));
                }
            }
            ZFamily::F41a { c } | ZFamily::F41b { c } => {
                if c < 1 {
                    return Err(invalid(format!("{} needs c >= 1, got c = {c}", family.tag())));
                }
            }
            ZFamily::F42 { a, b, c } => {
                if a < 3 || b < 2 || b > a - 1 || c < 1 {
                    return Err(invalid(format!("f42 needs a >= 3, 2 <= b <= a - 1, c >= 1; got ({a}, {b}, {c})")));
                }
                let (ac, bb) = (i128::from(a) * i128::from(c), i128::from(b) * (i128::from(b) - 1));
                if ac != bb {
                    return Err(invalid(format!("f42 needs a c = b (b - 1); {ac} != {bb}")));
                }
            }
        }
        Ok(Self { family })
    }

    pub fn family(&self) -> ZFamily {
        self.family
    }

    /// `m . n` with overflow reported as `None`.
    pub fn mul_checked(&self, m: i128, n: i128) -> Option<i128> {
        match self.family {
            ZFamily::ProjL => Some(m),
            ZFamily::ProjR => Some(n),
            ZFamily::F40a { a } => i128::from(a).checked_mul(m)?.checked_mul(n),
            ZFamily::F40b { a } => i128::from(a).checked_mul(m)?.checked_mul(n)?.checked_add(m)?.checked_add(n),
            ZFamily::F41a { c } => Some(i128::from(c)),
            ZFamily::F41b { c } => m.checked_add(n)?.checked_add(i128::from(c)),
            ZFamily::F42 { a, b, c } => {
                let amn = i128::from(a).checked_mul(m)?.checked_mul(n)?;
                let bmn = i128::from(b).checked_mul(m.checked_add(n)?)?;
                amn.checked_add(bmn)?.checked_add(i128::from(c))
            }
        }
    }

    pub fn mul(&self, m: &BigInt, n: &BigInt) -> BigInt {
        match self.family {
            ZFamily::ProjL => m.clone(),
            ZFamily::ProjR => n.clone(),
            ZFamily::F40a { a } => BigInt::from(a) * m * n,
            ZFamily::F40b { a } => BigInt::from(a) * m * n + m + n,
            ZFamily::F41a { c } => BigInt::from(c),
            ZFamily::F41b { c } => m + n + BigInt::from(c),
            ZFamily::F42 { a, b, c } => BigInt::from(a) * m * n + BigInt::from(b) * (m + n) + BigInt::from(c),
        }
    }

    /// Whether `x` absorbs every `m` in `[-w, w]` from both sides.
    pub fn is_absorber_on_window(&self, x: i64, w: i64) -> bool {
        let x = i128::from(x);
        (-w..=w).map(i128::from).all(|m| {
            let big = |v: i128| BigInt::from(v);
            let left = self.mul_checked(x, m).map(BigInt::from).unwrap_or_else(|| self.mul(&big(x), &big(m)));
            let right = self.mul_checked(m, x).map(BigInt::from).unwrap_or_else(|| self.mul(&big(m), &big(x)));
            left == big(x) && right == big(x)
        })
    }
}

impl FromStr for ZFamily {
    type Err = Error;

    /// `tag` or `tag:p1,p2,..`, e.g. `f42:6,3,1`.
    fn from_str(s: &str) -> Result<Self> {
        let (tag, rest) = s.split_once(':').unwrap_or((s, ""));
        let params: Vec<i64> = if rest.is_empty() {
            vec![]
        } else {
            rest.split(',')
                .map(|p| p.trim().parse().map_err(|_| invalid(format!("bad parameter {p:?}"))))
                .collect::<Result<_>>()?
        };
        family_from_parts(tag, &params)
    }
}

/// Builds a family from its tag and parameter list.
pub fn family_from_parts(tag: &str, params: &[i64]) -> Result<ZFamily> {
    let family = match (tag, params) {
        ("projL", []) => ZFamily::ProjL,
        ("projR", []) => ZFamily::ProjR,
        ("f40a", &[a]) => ZFamily::F40a { a },
        ("f40b", &[a]) => ZFamily::F40b { a },
        ("f41a", &[c]) => ZFamily::F41a { c },
        ("f41b", &[c]) => ZFamily::F41b { c },
        ("f42", &[a, b, c]) => ZFamily::F42 { a, b, c },
        _ if ZFamily::TAGS.contains(&tag) => {
            return Err(invalid(format!("wrong number of parameters for {tag}: {}", params.len())))
        }
        _ => return Err(invalid(format!("unknown family {tag:?}"))),
    };
    Ok(family)
}

pub fn ztruss(tag: &str, params: &[i64]) -> Result<ZTruss> {
    ZTruss::new(family_from_parts(tag, params)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZViolation {
    pub law: String,
    pub args: Vec<i64>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of a window scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZReport {
    pub subject: String,
    pub window: i64,
    pub instances: u64,
    pub violation_count: u64,
    /// The first violations found, at most [`ZReport::KEEP`].
    pub violations: Vec<ZViolation>,
    pub note: String,
}

impl ZReport {
    pub const KEEP: usize = 16;

    fn new(subject: String, window: i64) -> Self {
        Self {
            subject,
            window,
            instances: 0,
            violation_count: 0,
            violations: Vec::new(),
            note: format!("all arguments in [-{window}, {window}]; window evidence, not a proof"),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violation_count == 0
    }

    /// Evaluates both sides in `i128`; `slow` only runs on overflow or a
    /// mismatch.
    fn check(
        &mut self,
        law: &str,
        args: &[i64],
        fast: impl FnOnce() -> Option<(i128, i128)>,
        slow: impl FnOnce() -> (BigInt, BigInt),
    ) {
        if let Some((l, r)) = fast() {
            if l == r {
                self.instances += 1;
                return;
            }
        }
        self.record(law, args, slow());
    }

    fn record(&mut self, law: &str, args: &[i64], sides: (BigInt, BigInt)) {
        self.instances += 1;
        if sides.0 != sides.1 {
            self.violation_count += 1;
            if self.violations.len() < Self::KEEP {
                self.violations.push(ZViolation {
                    law: law.into(),
                    args: args.to_vec(),
                    lhs: sides.0.to_string(),
                    rhs: sides.1.to_string(),
                });
            }
        }
    }
}

fn window_check(w: i64) -> Result<()> {
    if w < 1 {
        return Err(invalid(format!("window must be positive, got {w}")));
    }
    Ok(())
}

/// Associativity and both distributivity laws over `[-w, w]`.
pub fn verify_window(z: &ZTruss, w: i64) -> Result<ZReport> {
    window_check(w)?;
    let mut report = ZReport::new(z.family.to_string(), w);
    let range = || (-w..=w).map(i128::from);
    let big = |v: i128| BigInt::from(v);
    let br_fast = |l: i128, m: i128, n: i128| l.checked_sub(m)?.checked_add(n);
    let br = |l: &BigInt, m: &BigInt, n: &BigInt| l - m + n;
    // products m . k and k . m for m in [-w, w], k in [-3w, 3w]
    let span = 3 * i128::from(w);
    let width = (2 * span + 1) as usize;
    let tabulate = |f: &dyn Fn(i128, i128) -> Option<i128>| -> Vec<Option<i128>> {
        range().flat_map(|m| (-span..=span).map(move |k| (m, k))).map(|(m, k)| f(m, k)).collect()
    };
    let left = tabulate(&|m, k| z.mul_checked(m, k));
    let right = tabulate(&|m, k| z.mul_checked(k, m));
    let at = |table: &[Option<i128>], m: i128, k: i128| table[(m + i128::from(w)) as usize * width + (k + span) as usize];
    for m in range() {
        for n in range() {
            for p in range() {
                report.check(
                    "assoc",
                    &[m as i64, n as i64, p as i64],
                    || Some((z.mul_checked(z.mul_checked(m, n)?, p)?, z.mul_checked(m, z.mul_checked(n, p)?)?)),
                    || {
                        let (m, n, p) = (big(m), big(n), big(p));
                        (z.mul(&z.mul(&m, &n), &p), z.mul(&m, &z.mul(&n, &p)))
                    },
                );
                for q in range() {
                    let args = [m as i64, n as i64, p as i64, q as i64];
                    report.check(
                        "left-dist",
                        &args,
                        || {
                            let lhs = at(&left, m, n - p + q)?;
                            Some((lhs, br_fast(at(&left, m, n)?, at(&left, m, p)?, at(&left, m, q)?)?))
                        },
                        || {
                            let (m, n, p, q) = (big(m), big(n), big(p), big(q));
                            (z.mul(&m, &br(&n, &p, &q)), br(&z.mul(&m, &n), &z.mul(&m, &p), &z.mul(&m, &q)))
                        },
                    );
                    report.check(
                        "right-dist",
                        &args,
                        || {
                            let lhs = at(&right, m, n - p + q)?;
                            Some((lhs, br_fast(at(&right, m, n)?, at(&right, m, p)?, at(&right, m, q)?)?))
                        },
                        || {
                            let (m, n, p, q) = (big(m), big(n), big(p), big(q));
                            (z.mul(&br(&n, &p, &q), &m), br(&z.mul(&n, &m), &z.mul(&p, &m), &z.mul(&q, &m)))
                        },
                    );
                }
            }
        }
    }
    Ok(report)
}

/// On the constant truss `m . n = a`, checks that `R(m) = [m, a, m] = 2m - a`
/// is a heap morphism, fixes `a`, and satisfies the weight-0 Rota-Baxter
/// identity with absorber `a`, over `[-w, w]`.
pub fn zrb_constant_product(a: i64, w: i64) -> Result<ZReport> {
    window_check(w)?;
    if w < a.abs() {
        return Err(invalid(format!("window {w} must contain the absorber {a}")));
    }
    let mut report = ZReport::new(format!("constant({a}) with R(m) = 2m - a"), w);
    let a = BigInt::from(a);
    let r = |m: &BigInt| BigInt::from(2) * m - &a;
    let mul = |_: &BigInt, _: &BigInt| a.clone();
    let br = |l: &BigInt, m: &BigInt, n: &BigInt| l - m + n;
    let range = || (-w..=w).map(BigInt::from);
    report.record("absorber-fixed", &[], (r(&a), a.clone()));
    for l in range() {
        for m in range() {
            for n in range() {
                let args = [&l, &m, &n].map(|v| i64::try_from(v).expect("window value"));
                report.record("heap-morphism", &args, (r(&br(&l, &m, &n)), br(&r(&l), &r(&m), &r(&n))));
            }
            let args = [&l, &m].map(|v| i64::try_from(v).expect("window value"));
            let lhs = mul(&r(&l), &r(&m));
            let rhs = r(&br(&mul(&r(&l), &m), &a, &mul(&l, &r(&m))));
            report.record("rota-baxter-0", &args, (lhs, rhs));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_constraints() {
        assert!(ztruss("f42", &[6, 3, 1]).is_ok());
        assert!(matches!(ztruss("f42", &[4, 2, 1]), Err(Error::InvalidParameters(_))));
        assert!(ztruss("f40a", &[1]).is_err());
        assert!(ztruss("f40a", &[0]).is_ok());
        assert!(ztruss("f40b", &[1]).is_ok());
        assert!(ztruss("f41a", &[0]).is_err());
        assert!(ztruss("f41a", &[1, 2]).is_err());
        assert!(ztruss("nope", &[]).is_err());
        assert_eq!("f42:6,3,1".parse::<ZFamily>().unwrap(), ZFamily::F42 { a: 6, b: 3, c: 1 });
        assert_eq!(ZFamily::F42 { a: 6, b: 3, c: 1 }.to_string(), "f42(6,3,1)");
    }

    #[test]
    fn products() {
        let z = ztruss("f40a", &[2]).unwrap();
        assert_eq!(z.mul_checked(3, 5), Some(30));
        assert_eq!(z.mul(&BigInt::from(3), &BigInt::from(5)), BigInt::from(30));
        let big = ztruss("f40a", &[2]).unwrap();
        assert_eq!(big.mul_checked(i128::MAX, 2), None);
    }

    #[test]
    fn windows() {
        for (tag, params) in [("f40a", vec![2]), ("f41a", vec![3]), ("f42", vec![6, 3, 1]), ("projL", vec![])] {
            let report = verify_window(&ztruss(tag, &params).unwrap(), 6).unwrap();
            assert!(report.is_valid(), "{tag}: {:?}", report.violations);
            assert_eq!(report.instances, 13u64.pow(3) + 2 * 13u64.pow(4));
        }
        assert!(ztruss("f41a", &[3]).unwrap().is_absorber_on_window(3, 10));
        assert!(verify_window(&ztruss("projR", &[]).unwrap(), 0).is_err());
    }

    #[test]
    fn constant_rota_baxter() {
        for a in [0, 3, -2] {
            assert!(zrb_constant_product(a, 8).unwrap().is_valid());
        }
        assert!(zrb_constant_product(9, 8).is_err());
    }
}
