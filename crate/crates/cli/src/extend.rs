use num_rational::BigRational;
use num_traits::ToPrimitive;
use qclone_extendibility::{
    dual_closed, dual_numeric, edges, isotropic_fit_exact, matching_state, optimal_state_3_3, p_closed, pair_marginal,
    Regime,
};
use serde::Serialize;

use crate::output::{document, CliError, ExactCoo, Frac};
use crate::{OutputFormat, RunConfig};

const AGREE_TOL: f64 = 1e-6;

#[derive(Serialize)]
struct Cell {
    n: usize,
    #[serde(flatten)]
    value: Frac,
}

#[derive(Serialize)]
struct Row {
    d: usize,
    cells: Vec<Cell>,
}

pub fn table(nmax: usize, dmax: usize, cfg: &RunConfig) -> Result<String, CliError> {
    if nmax < 2 || dmax < 2 {
        return Err(CliError::usage("need --nmax >= 2 and --dmax >= 2"));
    }
    let mut rows = Vec::new();
    for d in 2..=dmax {
        let mut cells = Vec::new();
        for n in 2..=nmax {
            cells.push(Cell { n, value: Frac::from(&p_closed(n, d)?) });
        }
        rows.push(Row { d, cells });
    }
    match cfg.format {
        OutputFormat::Csv => {
            let mut s = String::from("d,n,numerator,denominator\n");
            for r in &rows {
                for c in &r.cells {
                    s.push_str(&format!("{},{},{},{}\n", r.d, c.n, c.value.numerator, c.value.denominator));
                }
            }
            Ok(s.trim_end().to_string())
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Out {
                nmax: usize,
                dmax: usize,
                rows: Vec<Row>,
            }
            Ok(document("extend table", &Out { nmax, dmax, rows }))
        }
    }
}

#[derive(Serialize)]
struct ClosedDual {
    value: Frac,
    regime: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Frac>,
}

#[derive(Serialize)]
struct VerifyOut {
    n: usize,
    d: usize,
    closed: Frac,
    closed_value: f64,
    dual_numeric: f64,
    dual_x: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual_closed: Option<ClosedDual>,
    primal_matching: Frac,
    primal_residual: f64,
    agree: bool,
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Returns the document and the agreement flag.
pub fn verify(n: usize, d: usize) -> Result<(String, bool), CliError> {
    let closed = p_closed(n, d)?;
    let dual = dual_numeric(n, d, 1e-10)?;
    let dual_c = if n >= d && n % 2 == 1 && d % 2 == 1 {
        let c = dual_closed(n, d)?;
        let (regime, x) = match &c.regime {
            Regime::Flat => ("flat", None),
            Regime::Crossing { x, .. } => ("crossing", Some(Frac::from(x))),
        };
        Some((c.value.clone(), ClosedDual { value: Frac::from(&c.value), regime, x }))
    } else {
        None
    };
    let rho = matching_state(n, d)?;
    let mut primal = None;
    let mut residual = 0.0f64;
    for (i, j) in edges(n) {
        let fit = isotropic_fit_exact(&pair_marginal(&rho, i, j)?)?;
        residual = residual.max(fit.residual());
        if primal.as_ref().is_some_and(|p| *p != fit.p) {
            return Err(CliError::verification("matching marginals differ between edges"));
        }
        primal = Some(fit.p);
    }
    let primal = primal.expect("N >= 2 has an edge");
    let mut agree = (dual.value - to_f64(&closed)).abs() < AGREE_TOL && primal <= closed && residual == 0.0;
    if let Some((v, _)) = &dual_c {
        agree &= *v == closed;
    }
    let out = VerifyOut {
        n,
        d,
        closed: Frac::from(&closed),
        closed_value: to_f64(&closed),
        dual_numeric: dual.value,
        dual_x: dual.x,
        dual_closed: dual_c.map(|(_, c)| c),
        primal_matching: Frac::from(&primal),
        primal_residual: residual,
        agree,
    };
    Ok((document("extend verify", &out), agree))
}

#[derive(Serialize)]
struct Marginal {
    edge: (usize, usize),
    p: Frac,
    q: Frac,
    residual: f64,
}

pub fn state33(emit_operator: bool) -> Result<String, CliError> {
    let s = optimal_state_3_3()?;
    let marginals = edges(3)
        .into_iter()
        .zip(&s.marginals)
        .map(|(e, m)| Marginal { edge: e, p: Frac::from(&m.p), q: Frac::from(&m.q), residual: m.residual() })
        .collect();
    #[derive(Serialize)]
    struct Out {
        n: usize,
        d: usize,
        trace: Frac,
        min_eig: f64,
        psd: bool,
        marginals: Vec<Marginal>,
        #[serde(skip_serializing_if = "Option::is_none")]
        operator: Option<ExactCoo>,
    }
    let out = Out {
        n: 3,
        d: 3,
        trace: Frac::from(&s.rho.trace()),
        min_eig: s.min_eig,
        psd: s.min_eig >= -1e-10,
        marginals,
        operator: emit_operator.then(|| ExactCoo::from(&s.rho)),
    };
    Ok(document("extend state33", &out))
}
