//! One predicate per theorem, each behind its hypothesis gate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::canon::{canonical_form, CanonicalForm};
use crate::graph::connectivity::is_connected;
use crate::graph::family::{make_family, FamilySpec};
use crate::graph::{Adjacency, Graph};
use crate::spectral::{at_least, das_bound, merris_bound, q_closed_form_s, q_index, rayleigh_identity_check, GUARD_BAND};
use crate::structure::{check_peeling_lemma, classify_exceptional, is_sub_S, PeelVerdict};
use crate::subgraph::{has_cycle_of_length, has_path_of_order_with, longest_path, matching_number, SearchOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "EG")]
    Eg,
    #[serde(rename = "BES_i")]
    BesI,
    #[serde(rename = "BES_ii")]
    BesII,
    #[serde(rename = "YU_iii")]
    YuIII,
    #[serde(rename = "MT_i")]
    MtI,
    #[serde(rename = "MT_ii")]
    MtII,
    #[serde(rename = "AS")]
    As,
    #[serde(rename = "ASP")]
    Asp,
    #[serde(rename = "PROP_DOM_i")]
    PropDomI,
    #[serde(rename = "PROP_DOM_ii")]
    PropDomII,
    #[serde(rename = "LEM_PEEL")]
    LemPeel,
    #[serde(rename = "BOUNDS")]
    Bounds,
    #[serde(rename = "CONJ_i")]
    ConjI,
    #[serde(rename = "CONJ_ii")]
    ConjII,
}

impl TheoremId {
    pub const ALL: [TheoremId; 14] = [
        TheoremId::Eg,
        TheoremId::BesI,
        TheoremId::BesII,
        TheoremId::YuIII,
        TheoremId::MtI,
        TheoremId::MtII,
        TheoremId::As,
        TheoremId::Asp,
        TheoremId::PropDomI,
        TheoremId::PropDomII,
        TheoremId::LemPeel,
        TheoremId::Bounds,
        TheoremId::ConjI,
        TheoremId::ConjII,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Eg => "EG",
            TheoremId::BesI => "BES_i",
            TheoremId::BesII => "BES_ii",
            TheoremId::YuIII => "YU_iii",
            TheoremId::MtI => "MT_i",
            TheoremId::MtII => "MT_ii",
            TheoremId::As => "AS",
            TheoremId::Asp => "ASP",
            TheoremId::PropDomI => "PROP_DOM_i",
            TheoremId::PropDomII => "PROP_DOM_ii",
            TheoremId::LemPeel => "LEM_PEEL",
            TheoremId::Bounds => "BOUNDS",
            TheoremId::ConjI => "CONJ_i",
            TheoremId::ConjII => "CONJ_ii",
        }
    }

    pub fn is_conjecture(self) -> bool {
        matches!(self, TheoremId::ConjI | TheoremId::ConjII)
    }

    /// Why `(n, k)` lies outside the statement's hypotheses, if it does.
    pub fn gate(self, n: usize, k: usize) -> Option<String> {
        let fail = |cond: bool, msg: String| (!cond).then_some(msg);
        match self {
            TheoremId::Eg => fail(k >= 1, "needs k >= 1".into()),
            TheoremId::BesI | TheoremId::BesII => fail(k >= 1 && 2 * n > 5 * k + 4, "needs k >= 1 and n > (5k+4)/2".into()),
            TheoremId::YuIII => fail(k >= 1 && 2 * n > 5 * k + 3, "needs k >= 1 and n > (5k+3)/2".into()),
            TheoremId::MtI | TheoremId::MtII | TheoremId::PropDomI | TheoremId::PropDomII => {
                fail(k >= 1 && n >= 7 * k * k, "needs k >= 1 and n >= 7k^2".into())
            }
            TheoremId::LemPeel => fail(k >= 2 && n >= 7 * k * k, "needs k >= 2 and n >= 7k^2".into()),
            TheoremId::As => fail(k >= 1 && n > 2 * k, "needs k >= 1 and n >= 2k+1".into()),
            TheoremId::Asp => fail(k >= 2 && n >= 2 * k + 3, "needs k >= 2 and n >= 2k+3".into()),
            TheoremId::Bounds => None,
            TheoremId::ConjI | TheoremId::ConjII => fail(k >= 2, "needs k >= 2".into()),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem id `{s}`")))
    }
}

/// Result of evaluating one predicate on one graph.
#[derive(Clone, Debug, Default)]
pub(crate) struct Outcome {
    pub hit: bool,
    pub violation: Option<Value>,
    pub exact: bool,
}

impl Outcome {
    fn miss() -> Self {
        Outcome { hit: false, violation: None, exact: true }
    }

    fn hit(violation: Option<Value>) -> Self {
        Outcome { hit: true, violation, exact: true }
    }
}

/// Per-campaign constants: thresholds and the extremal models.
pub(crate) struct Context {
    pub theorem: TheoremId,
    pub n: usize,
    pub k: usize,
    pub tol: f64,
    pub search: SearchOptions,
    q_s: f64,
    q_splus: f64,
    e_s: usize,
    e_splus: usize,
    s_form: Option<CanonicalForm>,
    splus_form: Option<CanonicalForm>,
    l_form: Option<CanonicalForm>,
}

impl Context {
    pub fn new(theorem: TheoremId, n: usize, k: usize, tol: f64, search: SearchOptions) -> Result<Context> {
        use TheoremId::*;
        let needs_s = matches!(theorem, BesI | YuIII | MtI | PropDomI | ConjI);
        let needs_splus = matches!(theorem, BesII | MtII | PropDomII | ConjII);
        let mut ctx = Context {
            theorem,
            n,
            k,
            tol,
            search,
            q_s: f64::NAN,
            q_splus: f64::NAN,
            e_s: 0,
            e_splus: 0,
            s_form: None,
            splus_form: None,
            l_form: None,
        };
        if needs_s {
            let s = make_family(FamilySpec::S { n, k })?;
            ctx.q_s = q_closed_form_s(n, k);
            ctx.e_s = s.edge_count();
            ctx.s_form = Some(canonical_form(&s));
        }
        if needs_splus {
            let sp = make_family(FamilySpec::SPlus { n, k })?;
            ctx.q_splus = q_index(&sp, tol)?.q;
            ctx.e_splus = sp.edge_count();
            ctx.splus_form = Some(canonical_form(&sp));
        }
        if theorem == As && k >= 1 && n > 1 && (n - 1).is_multiple_of(k) {
            ctx.l_form = Some(canonical_form(&make_family(FamilySpec::L { t: (n - 1) / k, k })?));
        }
        Ok(ctx)
    }

    /// `q(G)` when it reaches `threshold` (within the guard band). The Das
    /// bound rules most graphs out without an eigenvalue computation.
    fn q_reaching(&self, g: &Graph, threshold: f64) -> Result<Option<f64>> {
        if g.n() < 2 || g.edge_count() == 0 {
            return Ok(None);
        }
        if das_bound(g)? + 1e-9 < threshold - GUARD_BAND {
            return Ok(None);
        }
        let q = q_index(g, self.tol)?.q;
        Ok(at_least(q, threshold).then_some(q))
    }

    fn has_path(&self, g: &Graph, l: usize) -> Result<(bool, bool)> {
        let (c, exact) = has_path_of_order_with(g, l, self.search)?;
        Ok((c.is_some(), exact))
    }

    pub fn evaluate(&self, g: &Graph) -> Result<Outcome> {
        use TheoremId::*;
        let (n, k) = (self.n, self.k);
        let e = g.edge_count();
        match self.theorem {
            Eg => {
                let r = longest_path(g, self.search)?;
                if r.order >= k + 2 {
                    return Ok(Outcome { exact: r.exact, ..Outcome::miss() });
                }
                let v = (2 * e > k * n).then(|| json!({"edges": e, "longest_path": r.order, "bound_2e": k * n}));
                Ok(Outcome { exact: r.exact, ..Outcome::hit(v) })
            }
            BesI | BesII => {
                let (e_min, l, form) = if self.theorem == BesI {
                    (self.e_s, 2 * k + 2, &self.s_form)
                } else {
                    (self.e_splus, 2 * k + 3, &self.splus_form)
                };
                if e < e_min || !is_connected(g) {
                    return Ok(Outcome::miss());
                }
                self.path_or_model(g, l, form, json!({"edges": e, "edge_threshold": e_min}))
            }
            YuIII => {
                let Some(q) = self.q_reaching(g, self.q_s)? else { return Ok(Outcome::miss()) };
                let (nu, cert) = matching_number(g);
                if nu > k || Some(canonical_form(g)) == self.s_form {
                    return Ok(Outcome::hit(None));
                }
                Ok(Outcome::hit(Some(json!({"q": q, "threshold": self.q_s, "matching_number": nu, "matching": cert}))))
            }
            MtI | MtII | ConjI | ConjII => {
                let (threshold, form) = match self.theorem {
                    MtI | ConjI => (self.q_s, &self.s_form),
                    _ => (self.q_splus, &self.splus_form),
                };
                let Some(q) = self.q_reaching(g, threshold)? else { return Ok(Outcome::miss()) };
                let diag = json!({"q": q, "threshold": threshold});
                match self.theorem {
                    MtI => self.path_or_model(g, 2 * k + 2, form, diag),
                    MtII => self.path_or_model(g, 2 * k + 3, form, diag),
                    _ => {
                        let l = if self.theorem == ConjI { 2 * k + 1 } else { 2 * k + 2 };
                        if has_cycle_of_length(g, l)?.is_some() || Some(canonical_form(g)) == *form {
                            return Ok(Outcome::hit(None));
                        }
                        let mut diag = diag;
                        diag["missing_cycle_length"] = json!(l);
                        diag["cycle_lengths"] = json!(crate::subgraph::cycle_lengths(g)?);
                        Ok(Outcome::hit(Some(diag)))
                    }
                }
            }
            PropDomI | PropDomII => {
                let (threshold, l) = if self.theorem == PropDomI { (self.q_s, 2 * k + 2) } else { (self.q_splus, 2 * k + 3) };
                let Some(q) = self.q_reaching(g, threshold)? else { return Ok(Outcome::miss()) };
                let (has, exact) = self.has_path(g, l)?;
                if has {
                    return Ok(Outcome { exact, ..Outcome::miss() });
                }
                let delta = g.max_degree();
                let v = (delta + 1 != n).then(|| json!({"q": q, "threshold": threshold, "max_degree": delta}));
                Ok(Outcome { exact, ..Outcome::hit(v) })
            }
            LemPeel => {
                let c = check_peeling_lemma(g, k, self.search)?;
                Ok(match c.verdict {
                    PeelVerdict::NotApplicable(_) => Outcome { exact: c.exact, ..Outcome::miss() },
                    PeelVerdict::Holds => Outcome { exact: c.exact, ..Outcome::hit(None) },
                    PeelVerdict::Fails => Outcome { exact: c.exact, ..Outcome::hit(Some(serde_json::to_value(&c)?)) },
                })
            }
            As => {
                if g.min_degree() < k || !is_connected(g) {
                    return Ok(Outcome::miss());
                }
                let (has, exact) = self.has_path(g, 2 * k + 2)?;
                if has || is_sub_S(g, k).is_some() || (self.l_form.is_some() && Some(canonical_form(g)) == self.l_form) {
                    return Ok(Outcome { exact, ..Outcome::hit(None) });
                }
                let lp = longest_path(g, self.search)?.order;
                Ok(Outcome { exact, ..Outcome::hit(Some(json!({"longest_path": lp, "min_degree": g.min_degree()}))) })
            }
            Asp => {
                if g.min_degree() < k || !is_connected(g) {
                    return Ok(Outcome::miss());
                }
                let (has, exact) = self.has_path(g, 2 * k + 3)?;
                if has {
                    return Ok(Outcome { exact, ..Outcome::hit(None) });
                }
                let m = classify_exceptional(g, k)?;
                let v = (!m.is_match()).then(|| json!({"classification": m, "min_degree": g.min_degree()}));
                Ok(Outcome { exact, ..Outcome::hit(v) })
            }
            Bounds => {
                let r = q_index(g, self.tol)?;
                let mut bad = serde_json::Map::new();
                if g.min_degree() >= 1 {
                    let m = merris_bound(g);
                    if r.q > m + GUARD_BAND {
                        bad.insert("merris".into(), json!(m));
                    }
                }
                if n >= 2 {
                    let d = das_bound(g)?;
                    if r.q > d + GUARD_BAND {
                        bad.insert("das".into(), json!(d));
                    }
                }
                let gap = rayleigh_identity_check(g, &r);
                if gap > 10.0 * self.tol {
                    bad.insert("rayleigh_gap".into(), json!(gap));
                }
                if bad.is_empty() {
                    return Ok(Outcome::hit(None));
                }
                bad.insert("q".into(), json!(r.q));
                Ok(Outcome::hit(Some(Value::Object(bad))))
            }
        }
    }

    /// Consequent "`P_l ⊂ G` unless `G` is the model".
    fn path_or_model(&self, g: &Graph, l: usize, form: &Option<CanonicalForm>, mut diag: Value) -> Result<Outcome> {
        let (has, exact) = self.has_path(g, l)?;
        if has || Some(canonical_form(g)) == *form {
            return Ok(Outcome { exact, ..Outcome::hit(None) });
        }
        diag["missing_path_order"] = json!(l);
        diag["longest_path"] = json!(longest_path(g, self.search)?.order);
        Ok(Outcome { exact, ..Outcome::hit(Some(diag)) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
            let s = serde_json::to_string(&t).unwrap();
            assert_eq!(s, format!("\"{}\"", t.as_str()));
        }
        assert!("nope".parse::<TheoremId>().is_err());
    }

    #[test]
    fn gates() {
        assert!(TheoremId::MtI.gate(7, 1).is_none());
        assert!(TheoremId::MtI.gate(6, 1).is_some());
        assert!(TheoremId::MtI.gate(9, 2).is_some());
        assert!(TheoremId::BesI.gate(4, 1).is_some());
        assert!(TheoremId::BesI.gate(5, 1).is_none());
        assert!(TheoremId::BesI.gate(8, 2).is_none());
        assert!(TheoremId::BesI.gate(7, 2).is_some());
        assert!(TheoremId::YuIII.gate(5, 1).is_none());
        assert!(TheoremId::YuIII.gate(4, 1).is_some());
        assert!(TheoremId::As.gate(5, 2).is_none());
        assert!(TheoremId::Asp.gate(7, 2).is_none());
        assert!(TheoremId::Asp.gate(7, 1).is_some());
        assert!(TheoremId::LemPeel.gate(9, 2).is_some());
        assert!(TheoremId::ConjI.gate(5, 2).is_none());
    }

    #[test]
    fn extremal_graphs_are_excused() {
        let tol = 1e-10;
        let s = make_family(FamilySpec::S { n: 8, k: 1 }).unwrap();
        let ctx = Context::new(TheoremId::MtI, 8, 1, tol, SearchOptions::default()).unwrap();
        let o = ctx.evaluate(&s).unwrap();
        assert!(o.hit && o.violation.is_none());
        let sp = make_family(FamilySpec::SPlus { n: 8, k: 1 }).unwrap();
        let ctx = Context::new(TheoremId::MtII, 8, 1, tol, SearchOptions::default()).unwrap();
        let o = ctx.evaluate(&sp).unwrap();
        assert!(o.hit && o.violation.is_none());
        let o = ctx.evaluate(&Graph::path(8).unwrap()).unwrap();
        assert!(!o.hit);
    }

    #[test]
    fn eg_antecedent() {
        let ctx = Context::new(TheoremId::Eg, 3, 1, 1e-10, SearchOptions::default()).unwrap();
        assert!(!ctx.evaluate(&Graph::complete(3).unwrap()).unwrap().hit);
        let o = ctx.evaluate(&Graph::path(3).unwrap().complement()).unwrap();
        assert!(o.hit && o.violation.is_none());
    }
}
