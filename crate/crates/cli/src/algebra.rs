use qclone_diagrams::{Diagram, Family};
use serde::Serialize;

use crate::output::{document, CliError};

fn parse_member(label: &str, s: &str, family: Family, k: usize) -> Result<Diagram, CliError> {
    let text = if s.contains('@') { s.to_string() } else { format!("{s}@k={k}") };
    let p = Diagram::parse(&text).map_err(|e| CliError::usage(format!("--{label}: {e}")))?;
    if p.k() != k {
        return Err(CliError::usage(format!("--{label} has k={}, expected {k}", p.k())));
    }
    if !p.is_member(family) {
        return Err(CliError::usage(format!("--{label} = {p} is not in family {family}")));
    }
    Ok(p)
}

pub fn compose(family: &str, k: usize, p: &str, q: &str) -> Result<String, CliError> {
    let family: Family = family.parse()?;
    if let Some(fk) = family.fixed_k() {
        if fk != k {
            return Err(CliError::usage(format!("family {family} needs k = {fk}")));
        }
    }
    let p = parse_member("p", p, family, k)?;
    let q = parse_member("q", q, family, k)?;
    let (r, loops) = p.compose(&q)?;
    #[derive(Serialize)]
    struct Out {
        family: String,
        k: usize,
        p: String,
        q: String,
        result: String,
        loops: usize,
        display: String,
    }
    let out = Out {
        family: family.to_string(),
        k,
        p: p.to_string(),
        q: q.to_string(),
        result: r.to_string(),
        loops,
        display: format!("{r} loops={loops}"),
    };
    Ok(document("algebra compose", &out))
}
