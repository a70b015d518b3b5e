//! Necessary conditions on a regular centre whose ramification locus is not
//! a normal crossing. Each elimination records the exact bound that kills it.

use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScreenVerdict {
    Pass,
    Fail(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound<F> {
    pub label: String,
    pub value: F,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScreenReport<F> {
    pub verdict: ScreenVerdict,
    pub bounds: Vec<Bound<F>>,
}

/// b-discrepancy of the blowup of a triple point with indices `n1, n2, n3`
/// when the class has ramification index `e` along the exceptional curve.
pub fn triple_point_bound<F: Scalar>(n1: i64, n2: i64, n3: i64, e: i64) -> F {
    F::recip_int(n1) + F::recip_int(n2) + F::recip_int(n3) - F::one() - F::recip_int(e)
}

/// Largest b-discrepancy at the point where the index-`d` curve meets an
/// index-2 curve after the first blowup: `3/(2d) - 1/2`.
pub fn tangent_blowup_bound<F: Scalar>(d: i64) -> F {
    F::ratio(3, 2 * d) - F::ratio(1, 2)
}

/// Log discrepancy `(i+1)/d - 1` of the `i`-th curve in the tower over that point.
pub fn log_discrepancy_bound<F: Scalar>(i: i64, d: i64) -> F {
    F::ratio(i + 1, d) - F::one()
}

fn is_platonic(a: i64, b: i64, c: i64) -> bool {
    // 1/a + 1/b + 1/c > 1  <=>  bc + ac + ab > abc
    b * c + a * c + a * b > a * b * c
}

struct Report<F> {
    bounds: Vec<Bound<F>>,
}

impl<F: Scalar> Report<F> {
    fn push(&mut self, label: impl Into<String>, value: F) {
        self.bounds.push(Bound { label: label.into(), value });
    }

    fn done(self, verdict: ScreenVerdict) -> ScreenReport<F> {
        ScreenReport { verdict, bounds: self.bounds }
    }

    fn fail(self, why: impl Into<String>) -> ScreenReport<F> {
        self.done(ScreenVerdict::Fail(why.into()))
    }
}

/// Screens a regular centre with ramification multiplicity `mult`, where a
/// tangential double point needs `d` blowups to separate branches of indices
/// `n1`, `n2`.
pub fn screen_regular_center<F: Scalar>(
    mult: u8,
    d: i64,
    n1: i64,
    n2: i64,
    secondary: bool,
    tangential: bool,
) -> ScreenReport<F> {
    let mut r = Report { bounds: Vec::new() };
    if mult >= 3 {
        r.push("triple point (2,3,3), e = 6", triple_point_bound(2, 3, 3, 6));
        r.push("triple point (2,3,4), e = 12", triple_point_bound(2, 3, 4, 12));
        r.push("triple point (2,3,5), e = 30", triple_point_bound(2, 3, 5, 30));
        r.push("tangent point, d = 3", tangent_blowup_bound(3));
        r.push("tower over the index-d point, d = 3", log_discrepancy_bound(2, 3));
        return r.fail("ramification locus has multiplicity 3");
    }
    if mult < 2 || !tangential {
        return r.done(ScreenVerdict::Pass);
    }
    let (n1, n2) = if n1 <= n2 { (n1, n2) } else { (n2, n1) };
    if d < 2 || n1 < 2 {
        return r.fail("tangential data needs d >= 2 and indices >= 2");
    }
    if !is_platonic(d, n1, n2) {
        return r.fail(format!("{{{d},{n1},{n2}}} is not a Platonic triple"));
    }
    if d >= 3 {
        r.push("log discrepancy of E3", F::ratio(3, n2) - F::ratio(3, 2));
        r.push("b-discrepancy ceiling on E3", F::ratio(5, 2 * n2) - F::ratio(1, 2));
        let why = match n2 {
            4 => {
                r.push("n2 = 4", F::ratio(3, 4) - F::ratio(1, 2) - F::ratio(1, 4));
                "n2 = 4 leaves E3 with b <= 0"
            }
            3 => {
                r.push("n2 = 3", F::ratio(3, 3) - F::ratio(3, 2) + F::ratio(1, 2));
                "n2 = 3 forces 2-torsion ramification on E3"
            }
            2 if secondary => {
                r.push("n2 = 2, log discrepancy of E2", F::zero());
                "secondary cancellation leaves E2 unramified with zero log discrepancy"
            }
            2 => {
                r.push("n2 = 2, log discrepancy of E1", F::ratio(2, 2) - F::ratio(3, 2) + F::ratio(1, 2));
                "E1 is unramified with non-positive log discrepancy"
            }
            _ => "ceiling is non-positive for n2 >= 5",
        };
        return r.fail(format!("d = {d} >= 3: {why}"));
    }
    if d == 2 && n1 == 3 {
        let (log_disc, e) = match n2 {
            3 => (F::ratio(2, 3) - F::ratio(4, 3), 3),
            4 => (F::ratio(2, 4) - F::ratio(4, 3), 6),
            _ => (F::ratio(2, n2) - F::ratio(4, 3), 15),
        };
        r.push(format!("log discrepancy of F2, n2 = {n2}"), log_disc.clone());
        r.push(format!("b-discrepancy ceiling on F2, e <= {e}"), log_disc + F::one() - F::recip_int(e));
        return r.fail(format!("d = 2, n1 = 3, n2 = {n2}"));
    }
    // d = 2 and n1 = 2 from here.
    let log_disc = F::ratio(2, n2) - F::one();
    r.push("log discrepancy of F2", log_disc.clone());
    if !secondary {
        if n2 % 2 == 0 {
            r.push("ceiling with ramification 2 z2", log_disc + F::one() - F::ratio(2, n2));
            return r.fail("n2 even without secondary ramification");
        }
        r.push(
            "log discrepancy after n2 - 2 further blowups",
            F::ratio(n2 - 2, n2) + F::ratio(2, n2) - F::one(),
        );
        return r.fail("n2 odd without secondary ramification");
    }
    if n2 % 2 != 0 {
        return r.fail("secondary ramification needs 2 | n2");
    }
    let l = n2 / 2;
    if l % 2 == 0 {
        r.push("ceiling with e2/2-torsion on F2", log_disc + F::one() - F::ratio(2, n2));
        return r.fail(format!("n2 = 2l with l = {l} even"));
    }
    r.done(ScreenVerdict::Pass)
}
