//! Batch verification suites with machine-readable reports.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{
    littlewood_richardson, normal_weights, partition_to_subset, GrassmannianShape,
};
use crate::error::{Error, Result};
use crate::gkm::{
    gkm_check_on, gkm_graph, integrate, kempf_laksov_class, opposite_schubert_class, point_class,
    positivity_certificate, projective_zeta, schubert_basis, structure_constant_table, EqClass,
};
use crate::poly::{LinearForm, Polynomial};
use crate::schur::restrict_schur;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Interpolation,
    Gkm,
    Positivity,
    Duality,
    Kl,
    Integrals,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Interpolation,
        Suite::Gkm,
        Suite::Positivity,
        Suite::Duality,
        Suite::Kl,
        Suite::Integrals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Interpolation => "interpolation",
            Suite::Gkm => "gkm",
            Suite::Positivity => "positivity",
            Suite::Duality => "duality",
            Suite::Kl => "kl",
            Suite::Integrals => "integrals",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Outcome of one check: `Ok(Err(msg))` is a mismatch, `Err` a domain error.
type Outcome = Result<std::result::Result<(), String>>;

fn check(name: impl Into<String>, f: impl FnOnce() -> Outcome) -> Check {
    let (passed, detail) = match f() {
        Ok(Ok(())) => (true, None),
        Ok(Err(msg)) => (false, Some(msg)),
        Err(e) => (false, Some(format!("error: {e}"))),
    };
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shape(n: usize, k: usize) -> GrassmannianShape {
    GrassmannianShape::new(n, k).expect("suite shapes are valid")
}

pub fn run_suite(suite: Suite) -> SuiteReport {
    let checks = match suite {
        Suite::Interpolation => interpolation(),
        Suite::Gkm => gkm(),
        Suite::Positivity => positivity(),
        Suite::Duality => duality(),
        Suite::Kl => kl(),
        Suite::Integrals => integrals(),
    };
    SuiteReport {
        suite,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

pub fn run_all() -> Vec<SuiteReport> {
    Suite::ALL.into_iter().map(run_suite).collect()
}

/// Diagonal restriction and vanishing of `s_λ(t^μ | u)`, every `Gr(k, n)` with `n <= 6`.
pub fn interpolation() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 2..=6 {
        for k in 1..n {
            let sh = shape(n, k);
            checks.push(check(format!("{sh}"), || {
                let pairs: Vec<_> = sh
                    .partitions()
                    .into_iter()
                    .flat_map(|lam| sh.partitions().into_iter().map(move |mu| (lam.clone(), mu)))
                    .collect();
                let bad = pairs
                    .par_iter()
                    .map(|(lam, mu)| -> Result<Option<String>> {
                        let v = restrict_schur(lam, mu, &sh)?;
                        if lam == mu {
                            let at = partition_to_subset(lam, &sh)?;
                            let diag: Polynomial = normal_weights(&at, &sh).iter().map(LinearForm::to_polynomial).product();
                            Ok((v != diag).then(|| format!("diagonal of {lam} is {v}")))
                        } else if !mu.contains(lam) {
                            Ok((!v.is_zero()).then(|| format!("{lam} at {mu} is {v}, expected 0")))
                        } else {
                            Ok(None)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(match bad.into_iter().flatten().next() {
                    Some(msg) => Err(msg),
                    None => Ok(()),
                })
            }));
        }
    }
    checks
}

/// Divisibility along every edge, for Schubert classes and all pairwise products.
pub fn gkm() -> Vec<Check> {
    let mut checks = Vec::new();
    for sh in [shape(4, 2), shape(5, 2), shape(6, 3)] {
        checks.push(check(format!("{sh} products"), || {
            let graph = gkm_graph(&sh);
            let basis = schubert_basis(&sh)?;
            let classes: Vec<_> = basis.iter().collect();
            let mut work: Vec<(String, EqClass)> = classes.iter().map(|(l, c)| (format!("[{l}]"), (*c).clone())).collect();
            for (i, (a, ca)) in classes.iter().enumerate() {
                for (b, cb) in &classes[i..] {
                    work.push((format!("[{a}]*[{b}]"), ca.mul(cb)?));
                }
            }
            let bad = work
                .par_iter()
                .map(|(name, c)| {
                    let report = gkm_check_on(&graph, c);
                    report.violations.first().map(|v| {
                        format!("{name} fails on {} -- {} ({})", v.edge.from, v.edge.to, v.edge.weight)
                    })
                })
                .collect::<Vec<_>>();
            Ok(match bad.into_iter().flatten().next() {
                Some(msg) => Err(msg),
                None => Ok(()),
            })
        }));
    }
    checks
}

/// Positivity of every structure constant, their degrees, and their
/// values at `t = 0` against a tableau-counting Littlewood-Richardson rule.
pub fn positivity() -> Vec<Check> {
    let mut checks = Vec::new();
    for sh in [shape(4, 2), shape(5, 2)] {
        let table = structure_constant_table(&sh);
        let table = match table {
            Ok(t) => t,
            Err(e) => {
                checks.push(check(format!("{sh}"), || Err(e)));
                continue;
            }
        };
        checks.push(check(format!("{sh} positive"), || {
            for ((a, b), e) in &table {
                for (nu, c) in e.coeffs() {
                    if let Err(w) = positivity_certificate(c, sh.n())? {
                        return Ok(Err(format!("c^{nu}_{a},{b} = {c}: {w}")));
                    }
                }
            }
            Ok(Ok(()))
        }));
        checks.push(check(format!("{sh} degrees"), || {
            for ((a, b), e) in &table {
                for (nu, c) in e.coeffs() {
                    let d = (a.size() + b.size()).checked_sub(nu.size());
                    if d.is_none() || !c.is_homogeneous() || c.degree() != d.map(|d| d as u32) {
                        return Ok(Err(format!("c^{nu}_{a},{b} = {c} has the wrong degree")));
                    }
                }
            }
            Ok(Ok(()))
        }));
        checks.push(check(format!("{sh} littlewood-richardson"), || {
            for ((a, b), e) in &table {
                let at_zero = e.at_zero();
                for nu in sh.partitions() {
                    let got = at_zero.get(&nu).cloned().unwrap_or_default();
                    let want = BigInt::from(littlewood_richardson(a, b, &nu));
                    if got != want {
                        return Ok(Err(format!("c^{nu}_{a},{b}(0) = {got}, expected {want}")));
                    }
                }
            }
            Ok(Ok(()))
        }));
    }
    checks
}

/// `∫ [Ω_λ]·[Ω̃_μ] = δ_{λμ}`.
pub fn duality() -> Vec<Check> {
    [shape(3, 1), shape(4, 2), shape(5, 2)]
        .into_iter()
        .map(|sh| {
            check(format!("{sh}"), || {
                let basis = schubert_basis(&sh)?;
                let opposite = sh
                    .partitions()
                    .into_iter()
                    .map(|mu| opposite_schubert_class(&mu, &sh).map(|c| (mu, c)))
                    .collect::<Result<Vec<_>>>()?;
                for (lam, c) in basis.iter() {
                    for (mu, o) in &opposite {
                        let v = integrate(&c.mul(o)?)?;
                        let want = if lam == mu { Polynomial::one() } else { Polynomial::zero() };
                        if v != want {
                            return Ok(Err(format!("pairing of {lam} with {mu} is {v}")));
                        }
                    }
                }
                Ok(Ok(()))
            })
        })
        .collect()
}

/// The determinantal formula against the tableau formula.
pub fn kl() -> Vec<Check> {
    [shape(4, 2), shape(5, 2), shape(5, 3), shape(6, 3)]
        .into_iter()
        .map(|sh| {
            check(format!("{sh}"), || {
                let basis = schubert_basis(&sh)?;
                for (lam, c) in basis.iter() {
                    if &kempf_laksov_class(lam, &sh)? != c {
                        return Ok(Err(format!("determinant differs for {lam}")));
                    }
                }
                Ok(Ok(()))
            })
        })
        .collect()
}

/// Fixed-point integrals with known values.
pub fn integrals() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 2..=6 {
        let sh = shape(n, 1);
        checks.push(check(format!("P^{} zeta restrictions", n - 1), || {
            let z = projective_zeta(n)?;
            let want = EqClass::from_fn(sh, |s| -Polynomial::t(s.elements()[0] as u32));
            Ok(ensure(z == want, || format!("zeta is {z}")))
        }));
        checks.push(check(format!("P^{} presentation", n - 1), || {
            let z = projective_zeta(n)?;
            let shifted = |j: usize| z.add(&EqClass::constant(sh, Polynomial::t(j as u32)));
            let mut all = EqClass::one(sh);
            for j in 1..=n {
                all = all.mul(&shifted(j)?)?;
            }
            if !all.is_zero() {
                return Ok(Err("product of all (zeta + t_j) is nonzero".into()));
            }
            for s in sh.subsets() {
                let i = s.elements()[0];
                let mut prod = EqClass::one(sh);
                for j in (1..=n).filter(|&j| j != i) {
                    prod = prod.mul(&shifted(j)?)?;
                }
                if prod != point_class(&s, &sh) {
                    return Ok(Err(format!("product omitting {i} is not the point class")));
                }
            }
            Ok(Ok(()))
        }));
        checks.push(check(format!("P^{} zeta powers", n - 1), || {
            let z = projective_zeta(n)?;
            for k in 0..n {
                let v = integrate(&z.pow(k as u32))?;
                let want = if k == n - 1 { Polynomial::one() } else { Polynomial::zero() };
                if v != want {
                    return Ok(Err(format!("integral of zeta^{k} is {v}")));
                }
            }
            Ok(Ok(()))
        }));
    }
    let g24 = shape(4, 2);
    checks.push(check("Gr(2, 4) s1^4", || {
        let s1 = &schubert_basis(&g24)?[&"1".parse()?];
        let v = integrate(&s1.pow(4))?;
        Ok(ensure(v == Polynomial::constant(2), || format!("got {v}")))
    }));
    for sh in [g24, shape(5, 2)] {
        checks.push(check(format!("{sh} low degree vanishing"), || {
            let basis = schubert_basis(&sh)?;
            for (a, ca) in basis.iter() {
                for (b, cb) in basis.iter() {
                    let v = integrate(&ca.mul(cb)?)?;
                    let d = a.size() + b.size();
                    if d < sh.dim() && !v.is_zero() {
                        return Ok(Err(format!("integral of [{a}]*[{b}] is {v}")));
                    }
                    if !v.is_zero() && (!v.is_homogeneous() || v.degree() != Some((d - sh.dim()) as u32)) {
                        return Ok(Err(format!("integral of [{a}]*[{b}] has degree {:?}", v.degree())));
                    }
                }
            }
            Ok(Ok(()))
        }));
    }
    checks
}
