//! The Gauss–Kronrod 7–15 kernel and the adaptive driver.

use super::{Estimate, QuadError, Tols};
use std::collections::BinaryHeap;

// QUADPACK qk15 nodes and weights. Abscissae are the positive half of the
// 15-point Kronrod rule; even indices are Kronrod-only points, odd indices
// (and the centre) are the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Panel {
    value: f64,
    error: f64,
}

// QUADPACK's error rescaling: sharpen the raw |K15 - G7| difference using
// the deviation integral resasc, floored at roundoff level.
fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut scaled = err.abs();
    if resasc != 0.0 && scaled != 0.0 {
        let s = (200.0 * scaled / resasc).powf(1.5);
        scaled = if s < 1.0 { resasc * s } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * resabs);
    }
    scaled
}

fn qk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);

    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();

    for j in 0..3 {
        let idx = 2 * j + 1;
        let x = half * XGK[idx];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[idx] = f1;
        fv2[idx] = f2;
        resk += WGK[idx] * (f1 + f2);
        resg += WG[j] * (f1 + f2);
        resabs += WGK[idx] * (f1.abs() + f2.abs());
    }
    for j in 0..4 {
        let idx = 2 * j;
        if idx == 7 {
            continue;
        }
        let x = half * XGK[idx];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[idx] = f1;
        fv2[idx] = f2;
        resk += WGK[idx] * (f1 + f2);
        resabs += WGK[idx] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = resk * half;
    let raw_err = ((resk - resg) * half).abs();
    Panel {
        value,
        error: rescale_error(raw_err, resabs * half.abs(), resasc * half.abs()),
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// Globally adaptive integration of `f` over the finite interval `[a, b]`:
/// split the worst panel until the error sum meets the tolerance.
pub(crate) fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tols: Tols) -> Result<Estimate, QuadError> {
    if a == b {
        return Ok(Estimate::exact(0.0));
    }
    let first = qk15(f, a, b);
    if !first.value.is_finite() {
        return Err(QuadError::NonFinite { x: 0.5 * (a + b) });
    }
    let mut total_value = first.value;
    let mut total_error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a,
        b,
        value: first.value,
        error: first.error,
    });

    for _ in 0..tols.max_subdiv {
        if total_error <= tols.abs.max(tols.rel * total_value.abs()) {
            return Ok(Estimate::new(total_value, total_error));
        }
        let worst = heap.pop().expect("heap never empty during refinement");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval too narrow to split further; keep its estimate
            heap.push(worst);
            break;
        }
        let left = qk15(f, worst.a, mid);
        let right = qk15(f, mid, worst.b);
        if !left.value.is_finite() || !right.value.is_finite() {
            return Err(QuadError::NonFinite { x: mid });
        }
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: left.value,
            error: left.error,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: right.value,
            error: right.error,
        });
    }

    if total_error <= tols.abs.max(tols.rel * total_value.abs()) {
        Ok(Estimate::new(total_value, total_error))
    } else {
        Err(QuadError::Accuracy {
            value: total_value,
            error: total_error,
        })
    }
}
