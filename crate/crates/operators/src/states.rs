use crate::space::{c, CMat};
use crate::OpError;

/// Named two-party states on C^d (x) C^d.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpecialState {
    MaxEntangled,
    MaxMixed,
    /// Normalized flip, trace 1.
    Flip,
    /// (1/d) sum_i |ii><ii|
    Diagonal,
    Isotropic(f64),
    Werner(f64),
}

fn range_check(value: f64, lo: f64, hi: f64) -> Result<(), OpError> {
    let slack = 1e-12;
    if !(value >= lo - slack && value <= hi + slack) {
        return Err(OpError::StateRange { value, lo, hi });
    }
    Ok(())
}

pub fn special_state(kind: SpecialState, d: usize) -> Result<CMat, OpError> {
    if d < 2 {
        return Err(OpError::BadDimension(format!("local dimension {d} < 2")));
    }
    let dim = d * d;
    let df = d as f64;
    let omega = || {
        let mut m = CMat::zeros(dim, dim);
        for i in 0..d {
            for j in 0..d {
                m[(i * d + i, j * d + j)] = c(1.0 / df);
            }
        }
        m
    };
    let mixed = || CMat::identity(dim, dim).scale(1.0 / (df * df));
    let flip = || {
        let mut m = CMat::zeros(dim, dim);
        for i in 0..d {
            for j in 0..d {
                m[(i * d + j, j * d + i)] = c(1.0 / df);
            }
        }
        m
    };
    Ok(match kind {
        SpecialState::MaxEntangled => omega(),
        SpecialState::MaxMixed => mixed(),
        SpecialState::Flip => flip(),
        SpecialState::Diagonal => {
            let mut m = CMat::zeros(dim, dim);
            for i in 0..d {
                m[(i * d + i, i * d + i)] = c(1.0 / df);
            }
            m
        }
        SpecialState::Isotropic(l) => {
            range_check(l, -1.0 / (df * df - 1.0), 1.0)?;
            omega().scale(l) + mixed().scale(1.0 - l)
        }
        SpecialState::Werner(l) => {
            range_check(l, 1.0 / (1.0 - df), 1.0 / (1.0 + df))?;
            flip().scale(l) + mixed().scale(1.0 - l)
        }
    })
}
