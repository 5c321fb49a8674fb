use serde_json::{json, to_value, Value};
use su3orb::cohom1::{cohom1_tables, effectivize_cohom1, thmfix_report};
use su3orb::curvature::{find_circle, flat_witness, repar_normal_form, CircleSearch};
use su3orb::eschenburg6::{effectivize, singular_report, TorusAction6};
use su3orb::eschenburg7::{
    almost_positive7, cohom1_match, gamma7, positive7, validate7, CircleAction7, Validity7,
};
use su3orb::numeric::{verify_o5_with, O5Config, O5Tolerances};
use su3orb::special::{weighted_cp, wu_quotient};
use su3orb::weights::{Permutation3, Weight3};
use su3orb::{Error, Result};

use crate::hexagon;
use crate::report::{Report, SCHEMA_VERSION};
use crate::{Command, Torus};

pub struct Outcome {
    pub report: Report,
    /// Text-only rendering appended after the fields.
    pub figure: Option<String>,
    pub exit_code: u8,
}

fn val<T: serde::Serialize>(x: &T) -> Value {
    to_value(x).expect("report types serialize")
}

fn outcome(command: String, input: Value, result: Value) -> Outcome {
    Outcome {
        report: Report {
            schema_version: SCHEMA_VERSION,
            command,
            input,
            normalization: Vec::new(),
            result,
            warnings: Vec::new(),
        },
        figure: None,
        exit_code: 0,
    }
}

fn torus_action(t: &Torus) -> Result<TorusAction6> {
    TorusAction6::new(t.a, t.b, t.p, t.q)
}

fn torus_input(t: &Torus) -> Value {
    json!({"a": t.a, "b": t.b, "p": t.p, "q": t.q})
}

// an infinite kernel forces every stabilizer to be infinite, so the vertex
// check inside the report covers it
fn require_orbifold(act: &TorusAction6) -> Result<()> {
    singular_report(act).map(|_| ())
}

pub fn run(cmd: &Command, tol: Option<f64>, echo: String) -> Result<Outcome> {
    let exact = !matches!(cmd, Command::O5Verify { .. });
    let mut out = match cmd {
        Command::Analyze7 { p, q } => analyze7(*p, *q, echo)?,
        Command::Analyze6(t) => analyze6(t, echo)?,
        Command::Cohom1 { d, a, b } => cohom1(*d, *a, *b, echo)?,
        Command::Poscurv { torus, bound } => poscurv(torus, *bound, echo)?,
        Command::Normalize(t) => normalize(t, echo)?,
        Command::Wu { p, q } => {
            let r = wu_quotient(*p, *q)?;
            outcome(echo, json!({"p": p, "q": q}), val(&r))
        }
        Command::Wcp { p, q, r } => {
            let w = weighted_cp(*p, *q, *r)?;
            outcome(echo, json!({"p": p, "q": q, "r": r}), val(&w))
        }
        Command::O5Verify {
            nu,
            samples,
            restarts,
            seed,
            torus_points,
            threads,
        } => {
            let cfg = O5Config {
                nu: *nu,
                samples: *samples,
                restarts: *restarts,
                seed: *seed,
                torus_points: *torus_points,
                ..O5Config::default()
            };
            o5_verify(&cfg, tol, *threads, echo)?
        }
    };
    if exact && tol.is_some() {
        out.report
            .warnings
            .push("--tol has no effect on exact computations".into());
    }
    Ok(out)
}

fn analyze7(p: Weight3, q: Weight3, echo: String) -> Result<Outcome> {
    let act = CircleAction7::new(p, q)?;
    let validity = validate7(&act);
    if validity == Validity7::NotOrbifold {
        return Err(Error::NotOrbifold(format!("p={p} q={q}")));
    }
    let groups: Vec<Value> = Permutation3::ALL
        .iter()
        .map(|&s| Ok(json!({"sigma": s, "group": gamma7(&act, s)?})))
        .collect::<Result<_>>()?;
    let result = json!({
        "validity": validity,
        "circles": groups,
        "positive": positive7(&act),
        "positive_any_block": su3orb::eschenburg7::positive7_any_block(&act),
        "almost_positive": almost_positive7(&act)?,
        "cohomogeneity_one_d": cohom1_match(&act),
    });
    Ok(outcome(echo, json!({"p": p, "q": q}), result))
}

fn analyze6(t: &Torus, echo: String) -> Result<Outcome> {
    let act = torus_action(t)?;
    let rep = singular_report(&act)?;
    let mut out = outcome(echo, torus_input(t), val(&rep));
    if !rep.effective {
        out.report.normalization = effectivize(&act)?.moves.iter().map(|m| m.to_string()).collect();
    }
    out.report.warnings = rep.warnings.clone();
    out.figure = Some(hexagon::render(&rep));
    Ok(out)
}

fn cohom1(d: i64, a: Weight3, b: Weight3, echo: String) -> Result<Outcome> {
    let rep = thmfix_report(d, &a, &b)?;
    let tables = cohom1_tables(&rep.params)?;
    let eff = effectivize_cohom1(d, &a, &b)?;
    let result = json!({
        "params": rep.params,
        "case": rep.case,
        "vertex_orders": rep.params.vertex_orders(),
        "tables": tables,
        "effective": {"a": eff.a, "b": eff.b, "kernel_order": eff.k},
        "claims": rep.claims,
        "claims_hold": rep.all_hold(),
        "singular_locus": rep.report,
    });
    let mut out = outcome(echo, json!({"d": d, "a": a, "b": b}), result);
    out.report.normalization = eff.moves.iter().map(|m| m.to_string()).collect();
    out.report.warnings = rep.report.warnings.clone();
    out.figure = Some(hexagon::render(&rep.report));
    if !rep.all_hold() {
        out.exit_code = 3;
    }
    Ok(out)
}

fn poscurv(t: &Torus, bound: u32, echo: String) -> Result<Outcome> {
    let act = torus_action(t)?;
    require_orbifold(&act)?;
    let witness = flat_witness(&act)?;
    let inputs = json!({
        "first": {"p": act.a(), "q": act.b(), "positive": positive7(&act.first_circle())},
        "second": {"p": act.p(), "q": act.q(), "positive": positive7(&act.second_circle())},
    });
    let circle = match find_circle(&act, bound)? {
        CircleSearch::Found(c) => {
            let e = c.circle(&act)?;
            json!({"lambda": c.lambda, "mu": c.mu, "p": e.p(), "q": e.q(), "positive": positive7(&e)})
        }
        CircleSearch::ProvablyNone(_) => Value::Null,
    };
    let result = json!({
        "positively_curved": witness.is_none(),
        "witness": witness,
        "circle": circle,
        "input_circles": inputs,
    });
    Ok(outcome(echo, json!({"a": t.a, "b": t.b, "p": t.p, "q": t.q, "bound": bound}), result))
}

fn normalize(t: &Torus, echo: String) -> Result<Outcome> {
    let act = torus_action(t)?;
    require_orbifold(&act)?;
    let eff = effectivize(&act)?;
    let repar = repar_normal_form(&eff.action)?;
    let result = json!({
        "kernel": eff.kernel,
        "effective": eff.action,
        "shape": repar.shape,
        "normal_form": repar.transformed,
    });
    let mut out = outcome(echo, torus_input(t), result);
    out.report.normalization = eff
        .moves
        .iter()
        .chain(repar.moves.iter())
        .map(|m| m.to_string())
        .collect();
    Ok(out)
}

fn o5_verify(cfg: &O5Config, tol: Option<f64>, threads: Option<usize>, echo: String) -> Result<Outcome> {
    let mut tols = O5Tolerances::default();
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(Error::InvalidArgument(format!("--tol must be positive, got {t}")));
        }
        tols.torus_flatness = t;
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::InvalidArgument("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let rep = pool.install(|| verify_o5_with(cfg, &tols))?;
    let passed = rep.passed();
    let mut result = val(&rep);
    result["passed"] = json!(passed);
    let input = json!({
        "nu": cfg.nu,
        "samples": cfg.samples,
        "restarts": cfg.restarts,
        "seed": cfg.seed,
        "torus_points": cfg.torus_points,
    });
    let mut out = outcome(echo, input, result);
    if !passed {
        out.exit_code = 3;
    }
    Ok(out)
}
