use serde::Serialize;

use crate::combinatorics::{binomial, log2_big};
use crate::error::{Error, Result};
use crate::params::CodeParams;

/// Upper bound on code size and the matching lower bound on redundancy,
/// both in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereBound {
    pub log2_size: f64,
    pub redundancy: f64,
}

fn log2(x: usize) -> f64 {
    (x as f64).log2()
}

/// `m log2 C(n,w)`.
fn log2_space(params: &CodeParams) -> f64 {
    params.m() as f64 * log2_big(&binomial(params.n(), params.w()))
}

/// Sphere packing with radius-`floor(t/2)` e-Hamming balls, using the
/// closed-form ball estimate `(m/h)^h (4w(n-w)/e^2)^(e h / 2)`, `h = floor(t/2)`.
///
/// Odd `e` is refused: the ball count assumes equal numbers of flips in
/// each direction.
pub fn sp_bound_thm3(params: &CodeParams) -> Result<SphereBound> {
    let (m, n, w, t, e) = (params.m(), params.n(), params.w(), params.t(), params.e());
    if e % 2 == 1 {
        return Err(Error::OddEUnsupportedByFormula { e });
    }
    let h = t / 2;
    let redundancy = if h == 0 {
        0.0
    } else {
        h as f64 * (log2(m) - log2(h))
            + (e / 2 * h) as f64 * (log2(4 * w * (n - w)) - 2.0 * log2(e))
    };
    Ok(SphereBound {
        log2_size: log2_space(params) - redundancy,
        redundancy,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thm4Bound {
    pub log2_size: f64,
    pub redundancy: f64,
    /// `C(n,w-e)/C(w,e) = C(n,w)/C(n-w+e,e)`, checked in integers.
    pub forms_agree: bool,
}

/// Sphere packing restricted to `t` rows that each lose exactly `e` ones:
/// `r >= t log2 C(n-w+e, e)`.
pub fn sp_bound_thm4(params: &CodeParams) -> Thm4Bound {
    let (n, w, t, e) = (params.n(), params.w(), params.t(), params.e());
    let per_row = binomial(n - w + e, e);
    let redundancy = t as f64 * log2_big(&per_row);
    let forms_agree = binomial(n, w - e) * &per_row == binomial(n, w) * binomial(w, e);
    Thm4Bound {
        log2_size: log2_space(params) - redundancy,
        redundancy,
        forms_agree,
    }
}

/// Bound for codes correcting two deletions anywhere in the word.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thm6Bound {
    /// `log2(m w (n-w))`.
    pub redundancy: f64,
    /// `log2(C(n,w)^m / (m w (n-w)))`.
    pub log2_size_power_reading: f64,
    /// `log2(C(n,w) / (m w (n-w)))`, the numerator as literally printed.
    pub log2_size_literal_reading: f64,
}

pub fn bound_2caecc_thm6(m: usize, n: usize, w: usize) -> Thm6Bound {
    let redundancy = log2(m * w * (n - w));
    let symbol = log2_big(&binomial(n, w));
    Thm6Bound {
        redundancy,
        log2_size_power_reading: m as f64 * symbol - redundancy,
        log2_size_literal_reading: symbol - redundancy,
    }
}

/// Redundancy of the single-tier construction, `e t log2 p`.
pub fn redundancy_cor2(e: usize, t: usize, p: usize) -> f64 {
    (e * t) as f64 * log2(p)
}

/// Redundancy of the two-tier construction, `(t1 + 2 t2) log2 p`.
pub fn redundancy_cor4(t1: usize, t2: usize, p: usize) -> f64 {
    (t1 + 2 * t2) as f64 * log2(p)
}

/// Every bound at one parameter point, in bits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub m: usize,
    pub n: usize,
    pub w: usize,
    pub t: usize,
    pub e: usize,
    pub p: usize,
    pub log2_space: f64,
    pub thm3_log2_size: Option<f64>,
    pub thm3_redundancy: Option<f64>,
    /// `ok` or the error code explaining a missing value.
    pub thm3_status: String,
    pub thm4_log2_size: f64,
    pub thm4_redundancy: f64,
    pub thm4_forms_agree: bool,
    pub thm6_redundancy: f64,
    pub thm6_log2_size_power_reading: f64,
    pub thm6_log2_size_literal_reading: f64,
    /// Construction redundancy `e t log2 p`.
    pub cor2_redundancy: f64,
    /// Two-tier construction with `t1 = t2 = 1`, which corrects any two
    /// deletions: `3 log2 p`.
    pub cor4_redundancy_2caecc: f64,
    pub gap_cor2_thm3: Option<f64>,
    pub gap_cor2_thm4: f64,
    pub gap_cor4_thm6: f64,
}

pub fn bound_report(params: &CodeParams) -> BoundReport {
    let (m, n, w, t, e, p) = (
        params.m(),
        params.n(),
        params.w(),
        params.t(),
        params.e(),
        params.p(),
    );
    let thm3 = sp_bound_thm3(params);
    let thm4 = sp_bound_thm4(params);
    let thm6 = bound_2caecc_thm6(m, n, w);
    let cor2 = redundancy_cor2(e, t, p);
    let cor4 = redundancy_cor4(1, 1, p);
    BoundReport {
        m,
        n,
        w,
        t,
        e,
        p,
        log2_space: log2_space(params),
        thm3_log2_size: thm3.as_ref().ok().map(|b| b.log2_size),
        thm3_redundancy: thm3.as_ref().ok().map(|b| b.redundancy),
        thm3_status: match &thm3 {
            Ok(_) => "ok".to_owned(),
            Err(err) => err.code().to_owned(),
        },
        thm4_log2_size: thm4.log2_size,
        thm4_redundancy: thm4.redundancy,
        thm4_forms_agree: thm4.forms_agree,
        thm6_redundancy: thm6.redundancy,
        thm6_log2_size_power_reading: thm6.log2_size_power_reading,
        thm6_log2_size_literal_reading: thm6.log2_size_literal_reading,
        cor2_redundancy: cor2,
        cor4_redundancy_2caecc: cor4,
        gap_cor2_thm3: thm3.ok().map(|b| cor2 - b.redundancy),
        gap_cor2_thm4: cor2 - thm4.redundancy,
        gap_cor4_thm6: cor4 - thm6.redundancy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate_params;

    fn params(m: usize, n: usize, w: usize, t: usize, e: usize) -> CodeParams {
        validate_params(m, n, w, t, e).unwrap()
    }

    #[test]
    fn thm3_closing_example() {
        let b = sp_bound_thm3(&params(17, 17, 9, 2, 2)).unwrap();
        let expected = 17f64.log2() + 288f64.log2() - 2.0;
        assert!((b.redundancy - expected).abs() < 1e-9);
        assert!((b.redundancy - 10.257).abs() < 1e-3);
        for t in 0..2 {
            let degenerate = sp_bound_thm3(&params(17, 17, 9, t, 2)).unwrap();
            assert_eq!(degenerate.redundancy, 0.0);
        }
        assert_eq!(
            sp_bound_thm3(&params(17, 17, 9, 2, 1)).unwrap_err(),
            Error::OddEUnsupportedByFormula { e: 1 }
        );
    }

    #[test]
    fn thm4_examples() {
        let b = sp_bound_thm4(&params(17, 17, 9, 2, 2));
        assert!((b.redundancy - 2.0 * 45f64.log2()).abs() < 1e-9);
        assert!((b.redundancy - 10.98).abs() < 0.01);
        assert!(b.forms_agree);
        let full = sp_bound_thm4(&params(3, 7, 3, 2, 3));
        assert!((full.redundancy - 2.0 * 35f64.log2()).abs() < 1e-9);
        assert_eq!(sp_bound_thm4(&params(3, 7, 3, 0, 1)).redundancy, 0.0);
    }

    #[test]
    fn thm4_forms_agree_on_grid() {
        for n in 2..=40 {
            for w in 1..n {
                for e in 1..=w {
                    let lhs = binomial(n, w - e) * binomial(n - w + e, e);
                    let rhs = binomial(n, w) * binomial(w, e);
                    assert_eq!(lhs, rhs, "n={n} w={w} e={e}");
                }
            }
        }
    }

    #[test]
    fn thm6_and_constructions() {
        let b = bound_2caecc_thm6(17, 17, 9);
        assert!((b.redundancy - 1224f64.log2()).abs() < 1e-12);
        let cor4 = redundancy_cor4(1, 1, 17);
        assert!((cor4 - 3.0 * 17f64.log2()).abs() < 1e-12);
        assert!(cor4 - b.redundancy <= 2.5);
        assert_eq!(bound_2caecc_thm6(1, 2, 1).redundancy, 0.0);
        assert!((redundancy_cor2(2, 2, 17) - 16.35).abs() < 0.01);
        assert_eq!(redundancy_cor2(1, 0, 17), 0.0);
        assert_eq!(redundancy_cor4(2, 0, 5), redundancy_cor2(1, 2, 5));
        assert!((redundancy_cor4(2, 1, 5) - 4.0 * 5f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn thm6_matches_thm3_at_two_two() {
        for n in 3..=30 {
            for w in 1..n {
                for m in 1..=n.min(5) {
                    let p = match validate_params(m, n, w, 2.min(m), 2.min(w)) {
                        Ok(p) if p.t() == 2 && p.e() == 2 => p,
                        _ => continue,
                    };
                    let thm3 = sp_bound_thm3(&p).unwrap().redundancy;
                    let thm6 = bound_2caecc_thm6(m, n, w).redundancy;
                    assert!(thm6 <= thm3 + 1e-9);
                }
            }
        }
    }

    #[test]
    fn thm4_monotone() {
        for n in [9, 17, 25] {
            for w in 2..n - 1 {
                let mut prev_t = 0.0;
                for t in 0..=4 {
                    let r = sp_bound_thm4(&params(5, n, w, t, 1)).redundancy;
                    assert!(r >= prev_t);
                    prev_t = r;
                }
                let mut prev_e = 0.0;
                for e in 1..=w {
                    let r = sp_bound_thm4(&params(5, n, w, 2, e)).redundancy;
                    assert!(r >= prev_e - 1e-9);
                    prev_e = r;
                }
            }
        }
    }

    #[test]
    fn report_closing_triple() {
        let r = bound_report(&params(17, 17, 9, 2, 2));
        assert_eq!(r.p, 17);
        assert!((r.cor2_redundancy - 4.0 * 17f64.log2()).abs() < 1e-12);
        assert!((r.thm3_redundancy.unwrap() - 10.257).abs() < 1e-3);
        assert!(r.gap_cor2_thm3.unwrap() <= 7.0);
        assert!(r.thm4_forms_agree);
        let odd = bound_report(&params(17, 17, 9, 2, 1));
        assert_eq!(odd.thm3_status, "ODD_E_UNSUPPORTED_BY_FORMULA");
        assert!(odd.thm3_redundancy.is_none());
    }
}
