use lagstab::scalar::{format_rational, Value};
use lagstab::stability::Witness;
use lagstab::{Mode, OrbitSpec, Scalar, StabilityReport};
use serde_json::{json, Value as Json};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn value_json(v: &Value) -> Json {
    match v {
        Value::Exact(q) => Json::String(format_rational(q)),
        Value::Float(x) => serde_json::Number::from_f64(*x).map_or(Json::Null, Json::Number),
    }
}

fn mode_json(m: &Mode) -> Json {
    json!(m.entries())
}

fn witness_json(w: &Option<Witness>) -> Json {
    match w {
        Some(w) => json!({ "mode": mode_json(&w.mode), "q": value_json(&w.q) }),
        None => Json::Null,
    }
}

pub fn orbit_json<S: Scalar>(orbit: &OrbitSpec<S>) -> Json {
    let vals = |xs: &[S]| Json::Array(xs.iter().map(|x| value_json(&x.to_value())).collect());
    json!({
        "n": orbit.n(),
        "simplex": vals(orbit.simplex()),
        "tanh_sq": value_json(&orbit.tanh_sq().to_value()),
        "radii_sq": vals(orbit.radii_sq()),
        "geodesic_radius": orbit.geodesic_radius(),
    })
}

/// The report as a JSON object. Keys come out sorted, so parsing and
/// re-serializing reproduces the same bytes.
pub fn report_json<S: Scalar>(orbit: &OrbitSpec<S>, report: &StabilityReport) -> Json {
    let mut o = orbit_json(orbit);
    let obj = o.as_object_mut().expect("object");
    obj.insert("regime".into(), json!(report.regime.to_string()));
    obj.insert("beyond_known_results".into(), json!(report.beyond_known_results()));
    obj.insert("min_q".into(), value_json(&report.min_q));
    json!({
        "orbit": o,
        "verdict": report.verdict.to_string(),
        "witness": witness_json(&report.witness),
        "null_modes": report.null_modes.iter().map(mode_json).collect::<Vec<_>>(),
        "enumeration_bound": value_json(&report.enumeration_bound),
        "modes_checked": report.modes_checked,
        "rigid": report.rigid,
        "volume_minimizing": report.volume_minimizing.to_string(),
        "arithmetic_track": report.arithmetic_track.to_string(),
        "tool_version": TOOL_VERSION,
    })
}

fn join_values<S: Scalar>(xs: &[S], sep: &str) -> String {
    xs.iter().map(|x| x.to_value().to_string()).collect::<Vec<_>>().join(sep)
}

pub fn report_text<S: Scalar>(orbit: &OrbitSpec<S>, r: &StabilityReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k:<18}{v}\n"));
    line("n", orbit.n().to_string());
    line("tanh^2 r", orbit.tanh_sq().to_value().to_string());
    line("simplex", format!("({})", join_values(orbit.simplex(), ", ")));
    line("radii^2", format!("({})", join_values(orbit.radii_sq(), ", ")));
    line("regime", r.regime.to_string());
    line("verdict", r.verdict.to_string());
    if r.beyond_known_results() {
        line("note", "stable outside the Clifford and n <= 2 cases".into());
    }
    match &r.witness {
        Some(w) => line("witness", format!("{}  Q = {}", w.mode, w.q)),
        None => line("witness", "none".into()),
    }
    line("min Q", r.min_q.to_string());
    line("enumeration bound", r.enumeration_bound.to_string());
    line("modes checked", r.modes_checked.to_string());
    line("null modes", r.null_modes.iter().map(Mode::to_string).collect::<Vec<_>>().join(" "));
    line("rigid", r.rigid.to_string());
    line("volume minimizing", r.volume_minimizing.to_string());
    line("arithmetic", r.arithmetic_track.to_string());
    out
}

/// One sweep/analysis record, in the CSV layout shared by `analyze` and
/// `sweep`.
pub struct Record {
    pub n: usize,
    pub t: Value,
    pub simplex: Vec<Value>,
    pub verdict: String,
    pub min_q: Value,
    pub witness: Option<Mode>,
}

impl Record {
    pub fn new<S: Scalar>(orbit: &OrbitSpec<S>, r: &StabilityReport) -> Self {
        Self {
            n: orbit.n(),
            t: orbit.tanh_sq().to_value(),
            simplex: orbit.simplex().iter().map(Scalar::to_value).collect(),
            verdict: r.verdict.to_string(),
            min_q: r.min_q.clone(),
            witness: r.witness.as_ref().map(|w| w.mode.clone()),
        }
    }

    pub fn csv_header(n: usize, exact: bool) -> String {
        let mut cols = vec!["n".to_string(), "t".to_string()];
        cols.extend((1..=n).map(|i| format!("s_{i}")));
        cols.push("verdict".into());
        if exact {
            cols.extend(["min_Q_num".into(), "min_Q_den".into()]);
        } else {
            cols.push("min_Q".into());
        }
        cols.push("witness".into());
        cols.join(",")
    }

    fn witness_field(&self) -> String {
        self.witness
            .as_ref()
            .map(|m| m.entries().iter().map(i64::to_string).collect::<Vec<_>>().join(";"))
            .unwrap_or_default()
    }

    pub fn csv_row(&self) -> String {
        let mut cols = vec![self.n.to_string(), self.t.to_string()];
        cols.extend(self.simplex.iter().map(Value::to_string));
        cols.push(self.verdict.clone());
        match &self.min_q {
            Value::Exact(q) => {
                cols.push(q.numer().to_string());
                cols.push(q.denom().to_string());
            }
            Value::Float(x) => cols.push(x.to_string()),
        }
        cols.push(self.witness_field());
        cols.join(",")
    }

    pub fn json(&self) -> Json {
        json!({
            "n": self.n,
            "t": value_json(&self.t),
            "simplex": self.simplex.iter().map(value_json).collect::<Vec<_>>(),
            "verdict": self.verdict,
            "min_q": value_json(&self.min_q),
            "witness": self.witness.as_ref().map(mode_json),
        })
    }

    pub fn text(&self) -> String {
        let s: Vec<String> = self.simplex.iter().map(Value::to_string).collect();
        let w = self.witness.as_ref().map(Mode::to_string).unwrap_or_else(|| "-".into());
        format!("t={} s=({}) {} min_Q={} witness={}", self.t, s.join(", "), self.verdict, self.min_q, w)
    }
}
