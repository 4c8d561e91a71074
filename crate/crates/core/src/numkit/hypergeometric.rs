use crate::error::{QesError, Result};
use crate::jet::Jet;

fn check_denominators(n: u32, c: f64) -> Result<()> {
    for k in 0..n {
        if c + k as f64 == 0.0 {
            return Err(QesError::Domain {
                what: format!("Pochhammer symbol (c)_{} with c = {c}", k + 1),
                x: c,
            });
        }
    }
    Ok(())
}

/// Terminating Gauss series `2F1(-n, b; c; x)`, a degree-`n` polynomial in `x`.
pub fn hyp2f1_poly(n: u32, b: f64, c: f64, x: f64) -> Result<f64> {
    check_denominators(n, c)?;
    let mut acc = 1.0;
    for k in (0..n).rev() {
        let k = k as f64;
        let ratio = (k - n as f64) * (b + k) / ((c + k) * (k + 1.0));
        acc = 1.0 + ratio * x * acc;
    }
    Ok(acc)
}

/// [`hyp2f1_poly`] with the argument carried as a jet.
pub fn hyp2f1_poly_jet(n: u32, b: f64, c: f64, x: Jet) -> Result<Jet> {
    check_denominators(n, c)?;
    let mut acc = Jet::constant(1.0);
    for k in (0..n).rev() {
        let k = k as f64;
        let ratio = (k - n as f64) * (b + k) / ((c + k) * (k + 1.0));
        acc = 1.0 + x * acc * ratio;
    }
    Ok(acc)
}
