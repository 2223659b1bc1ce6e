//! Piecewise-linear action of the half-twist generators on Dynnikov
//! coordinates. Updates are in max-plus form; every intermediate value is
//! computed with checked arithmetic.

use crate::error::{Error, Result};

use super::braid::{BraidWord, Generator};
use super::coord::{add, negpart, pos, sub, Coordinate};
use super::coords::MultiCurveCoords;

/// Image of `l` under one generator.
pub fn act_generator<T: Coordinate>(l: &MultiCurveCoords<T>, g: Generator) -> Result<MultiCurveCoords<T>> {
    let n = l.punctures();
    if g.index == 0 || g.index >= n {
        return Err(Error::validity(format!("generator {g} out of range for {n} punctures")));
    }
    let mut out = l.clone();
    let i = g.index;
    if i == 1 {
        let (a, b) = end_left(&l.a[0], &l.b[0], g.inverse)?;
        out.a[0] = a;
        out.b[0] = b;
    } else if i == n - 1 {
        let k = n - 3;
        let (a, b) = end_right(&l.a[k], &l.b[k], g.inverse)?;
        out.a[k] = a;
        out.b[k] = b;
    } else {
        let (p, q) = (i - 2, i - 1);
        let [a0, b0, a1, b1] = middle(&l.a[p], &l.b[p], &l.a[q], &l.b[q], g.inverse)?;
        out.a[p] = a0;
        out.b[p] = b0;
        out.a[q] = a1;
        out.b[q] = b1;
    }
    Ok(out)
}

/// Image of `l` under a word, applying generators left to right.
pub fn act_word<T: Coordinate>(l: &MultiCurveCoords<T>, w: &BraidWord) -> Result<MultiCurveCoords<T>> {
    w.generators().iter().try_fold(l.clone(), |acc, &g| act_generator(&acc, g))
}

fn end_left<T: Coordinate>(a: &T, b: &T, inverse: bool) -> Result<(T, T)> {
    if !inverse {
        // b' = b^+ - a,  a' = b - b'^+
        let s = sub(&pos(b), a)?;
        Ok((sub(b, &pos(&s))?, s))
    } else {
        // b' = a + b^+,  a' = b'^+ - b
        let s = add(a, &pos(b))?;
        Ok((sub(&pos(&s), b)?, s))
    }
}

fn end_right<T: Coordinate>(a: &T, b: &T, inverse: bool) -> Result<(T, T)> {
    if !inverse {
        // b' = b^- - a,  a' = b - b'^-
        let s = sub(&negpart(b), a)?;
        Ok((sub(b, &negpart(&s))?, s))
    } else {
        // b' = a + b^-,  a' = b'^- - b
        let s = add(a, &negpart(b))?;
        Ok((sub(&negpart(&s), b)?, s))
    }
}

fn middle<T: Coordinate>(a0: &T, b0: &T, a1: &T, b1: &T, inverse: bool) -> Result<[T; 4]> {
    if !inverse {
        // c = a0 - b0^- - a1 + b1^+
        let c = add(&sub(&sub(a0, &negpart(b0))?, a1)?, &pos(b1))?;
        let na0 = add(&add(a0, &pos(b0))?, &pos(&sub(&pos(b1), &c)?))?;
        let nb0 = sub(b1, &pos(&c))?;
        let na1 = add(&add(a1, &negpart(b1))?, &negpart(&add(&negpart(b0), &c)?))?;
        let nb1 = add(b0, &pos(&c))?;
        Ok([na0, nb0, na1, nb1])
    } else {
        // d = a0 + b0^- - a1 - b1^+
        let d = sub(&sub(&add(a0, &negpart(b0))?, a1)?, &pos(b1))?;
        let na0 = sub(&sub(a0, &pos(b0))?, &pos(&add(&pos(b1), &d)?))?;
        let nb0 = add(b1, &negpart(&d))?;
        let na1 = sub(&sub(a1, &negpart(b1))?, &negpart(&sub(&negpart(b0), &d)?))?;
        let nb1 = sub(b0, &negpart(&d))?;
        Ok([na0, nb0, na1, nb1])
    }
}
