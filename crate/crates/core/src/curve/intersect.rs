use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::action::act_word;
use super::coord::Coordinate;
use super::coords::MultiCurveCoords;
use super::round::RoundCurve;

/// Largest number of twists the exact intersection search will apply.
pub const TWIST_BUDGET: u64 = 1 << 24;

/// Crossing counts with the vertical chords between consecutive punctures,
/// indexed `0..n-1` for the chords right of punctures `1..n-1`.
pub fn chord_counts<T: Coordinate>(l: &MultiCurveCoords<T>) -> Result<Vec<BigInt>> {
    let big = l.convert::<BigInt>()?;
    let (a, b) = (big.a(), big.b());
    let mut prefix = BigInt::zero();
    let mut top = BigInt::zero();
    for k in 0..a.len() {
        let bk_pos = if b[k].is_positive() { b[k].clone() } else { BigInt::zero() };
        let cand = a[k].abs() + bk_pos + &prefix;
        if cand > top {
            top = cand;
        }
        prefix += &b[k];
    }
    let mut out = Vec::with_capacity(a.len() + 1);
    let mut cur: BigInt = top * 2;
    out.push(cur.clone());
    for bk in b {
        cur -= bk * 2;
        out.push(cur.clone());
    }
    Ok(out)
}

/// Geometric intersection number of a multicurve with a round curve.
///
/// A twist about `c` fixes `l` exactly when they are disjoint. Otherwise the
/// twist estimate `|i(τ^k l, β) - 2k·i(l, c)| <= i(l, β)` for a chord `β`
/// crossing `c` twice pins the value down once `k > i(l, β)`.
pub fn intersection_with_round<T: Coordinate>(l: &MultiCurveCoords<T>, c: RoundCurve) -> Result<u64> {
    let n = l.punctures();
    c.fits(n)?;
    let l = l.convert::<BigInt>()?;
    if c.is_boundary_parallel(n) {
        return Ok(0);
    }
    let twist = c.twist_word();
    let once = act_word(&l, &twist)?;
    if once == l {
        return Ok(0);
    }
    let chord = c.first() - 1;
    let base = chord_counts(&l)?[chord].clone();
    let k = base.to_u64().filter(|&v| v < TWIST_BUDGET).ok_or_else(|| {
        Error::Resource(format!("intersection needs more than {TWIST_BUDGET} twists"))
    })? + 1;
    let mut cur = once;
    for _ in 1..k {
        cur = act_word(&cur, &twist)?;
    }
    let v = chord_counts(&cur)?[chord].clone();
    let two_k = BigInt::from(2 * k);
    // nearest integer to v / 2k
    let i: BigInt = (v * 2 + &two_k) / (two_k * 2);
    i.to_u64().ok_or(Error::Overflow)
}
