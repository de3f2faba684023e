use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use super::params::{ConstructionParams, ParamsEcho};
use crate::blocks::{Certificate, Stage};
use crate::numbers::Rational;
use crate::ordgroup::LimitGroup;

/// Values with more digits than this get their digit count printed in tables.
pub const DIGIT_COUNT_THRESHOLD: usize = 40;

/// One stage together with every certificate checked for it and for its
/// outgoing connecting map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: Stage,
    pub certificates: Vec<Certificate>,
}

/// Result of a full run.
#[derive(Debug, Clone)]
pub struct Report {
    pub params: ConstructionParams,
    pub stages: Vec<StageRecord>,
    pub limit: LimitGroup,
    pub witness: (Rational, BigInt),
}

#[derive(Serialize)]
struct ReportView<'a> {
    params: ParamsEcho,
    stages: Vec<StageRow<'a>>,
    limit: LimitView,
}

#[derive(Serialize)]
struct StageRow<'a> {
    j: usize,
    #[serde(rename = "L")]
    big_l: String,
    n_prev: Option<String>,
    m_factors: String,
    dim_g: String,
    theta_m: String,
    dim_p: String,
    unit: String,
    k_j: String,
    l0: String,
    l1: String,
    l: String,
    q_j: String,
    mult: Option<String>,
    r: Option<String>,
    s: Option<String>,
    cone_min: String,
    cone_fraction: String,
    certificates: &'a [Certificate],
}

#[derive(Serialize)]
struct LimitView {
    group: GroupView,
    cone: ConeView,
    witness: WitnessView,
    fractions: Vec<String>,
}

#[derive(Serialize)]
struct GroupView {
    kind: &'static str,
    supernatural: String,
}

#[derive(Serialize)]
struct ConeView {
    kind: &'static str,
    k: String,
}

#[derive(Serialize)]
struct WitnessView {
    x: String,
    n: String,
}

fn opt(x: &Option<BigInt>) -> Option<String> {
    x.as_ref().map(BigInt::to_string)
}

impl Report {
    fn view(&self) -> ReportView<'_> {
        ReportView {
            params: ParamsEcho::from(&self.params),
            stages: self
                .stages
                .iter()
                .map(|rec| {
                    let st = &rec.stage;
                    StageRow {
                        j: st.j,
                        big_l: st.big_l.to_string(),
                        n_prev: opt(&st.n_prev),
                        m_factors: st.m_factors.to_string(),
                        dim_g: st.dim_g.to_string(),
                        theta_m: st.g.m.to_string(),
                        dim_p: st.dim_p.to_string(),
                        unit: st.unit.to_string(),
                        k_j: st.k.to_string(),
                        l0: st.l0.to_string(),
                        l1: st.l1.to_string(),
                        l: st.l.to_string(),
                        q_j: st.q.to_string(),
                        mult: opt(&st.mult),
                        r: opt(&st.r),
                        s: opt(&st.s),
                        cone_min: (&st.l + BigInt::from(1)).to_string(),
                        cone_fraction: Rational::new(&st.l + BigInt::from(1), st.unit.clone()).to_string(),
                        certificates: &rec.certificates,
                    }
                })
                .collect(),
            limit: LimitView {
                group: GroupView {
                    kind: "rationals-with-denominators",
                    supernatural: self.limit.supernatural().to_string(),
                },
                cone: ConeView {
                    kind: "above-k",
                    k: self.limit.k().to_string(),
                },
                witness: WitnessView {
                    x: self.witness.0.to_string(),
                    n: self.witness.1.to_string(),
                },
                fractions: self.limit.cone_fractions().iter().map(Rational::to_string).collect(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.view()).expect("report views always serialize")
    }

    pub fn to_table(&self) -> String {
        let v = self.view();
        let mut out = String::new();
        let p = &v.params;
        let _ = writeln!(
            out,
            "k = {}  n = {}  stages = {}  policy = {}  enumeration = {}",
            p.k, p.supernatural, p.stages, p.policy, p.enumeration
        );
        for row in &v.stages {
            let _ = writeln!(out, "\nstage {}", row.j);
            let fields: [(&str, Option<&String>); 17] = [
                ("L", Some(&row.big_l)),
                ("n_prev", row.n_prev.as_ref()),
                ("m_factors", Some(&row.m_factors)),
                ("dim_g", Some(&row.dim_g)),
                ("theta_m", Some(&row.theta_m)),
                ("dim_p", Some(&row.dim_p)),
                ("unit", Some(&row.unit)),
                ("k_j", Some(&row.k_j)),
                ("l0", Some(&row.l0)),
                ("l1", Some(&row.l1)),
                ("l", Some(&row.l)),
                ("q_j", Some(&row.q_j)),
                ("mult", row.mult.as_ref()),
                ("r", row.r.as_ref()),
                ("s", row.s.as_ref()),
                ("cone_min", Some(&row.cone_min)),
                ("cone_fraction", Some(&row.cone_fraction)),
            ];
            for (name, value) in fields {
                let _ = writeln!(out, "  {name:<14}{}", value.map_or("-".to_string(), |s| with_digits(s)));
            }
            let ok = row.certificates.iter().filter(|c| c.holds).count();
            let _ = writeln!(out, "  certificates  {ok}/{} hold", row.certificates.len());
            for c in row.certificates {
                let _ = writeln!(out, "    {c}");
            }
        }
        let _ = writeln!(out, "\nlimit");
        let _ = writeln!(out, "  group         G_n, n = {}", v.limit.group.supernatural);
        let _ = writeln!(out, "  cone          {{0}} u (k, inf), k = {}", v.limit.cone.k);
        let _ = writeln!(out, "  witness       ({}, {})", v.limit.witness.x, v.limit.witness.n);
        let _ = writeln!(out, "  fractions     {}", v.limit.fractions.join(", "));
        out
    }
}

fn with_digits(s: &str) -> String {
    let digits = s.trim_start_matches('-').len();
    if digits > DIGIT_COUNT_THRESHOLD && s.bytes().all(|c| c.is_ascii_digit() || c == b'-') {
        format!("{s} ({digits} digits)")
    } else {
        s.to_string()
    }
}
