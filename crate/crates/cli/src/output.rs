use std::fmt;

use num_rational::BigRational;
use qclone_cloning::CloneError;
use qclone_diagrams::DiagramError;
use qclone_extendibility::ExtError;
use qclone_operators::{coo_entries, CMat, OpError, RatOp};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

/// Exit-code classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Failure {
    Usage = 1,
    Outside = 2,
    Verification = 3,
    Cap = 4,
}

impl Failure {
    fn kind(self) -> &'static str {
        match self {
            Failure::Usage => "usage",
            Failure::Outside => "outside",
            Failure::Verification => "verification",
            Failure::Cap => "resource-cap",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub class: Failure,
    pub message: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError { class: Failure::Usage, message: msg.into() }
    }

    pub fn verification(msg: impl Into<String>) -> Self {
        CliError { class: Failure::Verification, message: msg.into() }
    }

    pub fn code(&self) -> i32 {
        self.class as i32
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::json!({
            "schema": SCHEMA,
            "error": { "kind": self.class.kind(), "message": self.message },
        });
        serde_json::to_string_pretty(&v).expect("error json")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.class.kind(), self.message)
    }
}

impl From<OpError> for CliError {
    fn from(e: OpError) -> Self {
        let class = match e {
            OpError::CapExceeded { .. } => Failure::Cap,
            OpError::NonHermitian | OpError::NoConvergence(_) => Failure::Verification,
            _ => Failure::Usage,
        };
        CliError { class, message: e.to_string() }
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        let class = match e {
            DiagramError::CapExceeded { .. } => Failure::Cap,
            _ => Failure::Usage,
        };
        CliError { class, message: e.to_string() }
    }
}

impl From<CloneError> for CliError {
    fn from(e: CloneError) -> Self {
        match e {
            CloneError::Op(op) => op.into(),
            CloneError::Verification(m) => CliError::verification(m),
            other => CliError::usage(other.to_string()),
        }
    }
}

impl From<ExtError> for CliError {
    fn from(e: ExtError) -> Self {
        match e {
            ExtError::Op(op) => op.into(),
            ExtError::Diagram(d) => d.into(),
            ExtError::Verification(m) => CliError::verification(m),
            ExtError::NoConvergence(_) => CliError::verification(e.to_string()),
            other => CliError::usage(other.to_string()),
        }
    }
}

/// Exact fraction; integers that do not fit in i64 are written as strings.
#[derive(Clone, Debug, Serialize)]
pub struct Frac {
    pub numerator: Value,
    pub denominator: Value,
}

fn big_value(x: &num_bigint::BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

impl From<&BigRational> for Frac {
    fn from(r: &BigRational) -> Self {
        Frac { numerator: big_value(r.numer()), denominator: big_value(r.denom()) }
    }
}

/// Sparse coordinate listing [row, col, re, im] of a dense operator.
#[derive(Clone, Debug, Serialize)]
pub struct Coo {
    pub dim: usize,
    pub entries: Vec<(usize, usize, f64, f64)>,
}

impl Coo {
    pub fn from_dense(m: &CMat) -> Self {
        Coo { dim: m.nrows(), entries: coo_entries(m, 1e-14) }
    }
}

/// Exact listing [row, col, "num/den"].
#[derive(Clone, Debug, Serialize)]
pub struct ExactCoo {
    pub dim: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl From<&RatOp> for ExactCoo {
    fn from(op: &RatOp) -> Self {
        let entries = op.entries().iter().map(|(&(r, c), v)| (r, c, v.to_string())).collect();
        ExactCoo { dim: op.dim(), entries }
    }
}

/// Wraps a payload with the schema tag.
pub fn document<T: Serialize>(command: &str, payload: &T) -> String {
    let mut v = serde_json::to_value(payload).expect("serializable payload");
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), Value::from(SCHEMA));
    out.insert("command".into(), Value::from(command));
    if let Value::Object(fields) = &mut v {
        out.append(fields);
    } else {
        out.insert("result".into(), v);
    }
    serde_json::to_string_pretty(&Value::Object(out)).expect("json")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_fall_back_to_strings() {
        let small = BigRational::new(7.into(), 19.into());
        let v = serde_json::to_value(Frac::from(&small)).unwrap();
        assert_eq!(v, serde_json::json!({"numerator": 7, "denominator": 19}));
        let huge: num_bigint::BigInt = num_bigint::BigInt::from(10).pow(30);
        let v = serde_json::to_value(Frac::from(&BigRational::new(huge, 3.into()))).unwrap();
        assert_eq!(v["numerator"], "1000000000000000000000000000000");
    }

    #[test]
    fn error_classes_map_to_exit_codes() {
        assert_eq!(CliError::usage("x").code(), 1);
        assert_eq!(CliError::verification("x").code(), 3);
        assert_eq!(CliError::from(ExtError::Domain("x".into())).code(), 1);
        assert_eq!(CliError::from(ExtError::NoConvergence(400)).code(), 3);
        let cap = qclone_operators::dense_dim(10, 10).unwrap_err();
        assert_eq!(CliError::from(ExtError::Op(cap)).code(), 4);
    }

    #[test]
    fn documents_start_with_schema_and_command() {
        #[derive(Serialize)]
        struct P {
            x: u8,
        }
        let text = document("demo", &P { x: 1 });
        let v: Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["schema", "command", "x"]);
        assert_eq!(v["schema"], SCHEMA);
        let err: Value = serde_json::from_str(&CliError::usage("bad").to_json()).unwrap();
        assert_eq!(err["error"]["kind"], "usage");
    }
}
