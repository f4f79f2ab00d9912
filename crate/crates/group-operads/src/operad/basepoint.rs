//! Basepoint sequences generated by one binary element.
//!
//! An arity-2 element `a` whose two faces are the unit and which composes
//! with itself the same way on either side generates a coherent sequence
//! `a_0, a_1, a_2, ... ` with `a_k = gamma(a; a_{k-1}, 1)`, closed under
//! composition: `gamma(a_k; a_{m_1}, ..., a_{m_k}) = a_m`. In a group
//! family the identities form one such sequence; the basic swap generates
//! the order reversals in the symmetric family, and the squared generator
//! the full twists in the braid family.

use super::family::{Element, Family, OperadError};
use super::laws::compositions_exact;
use super::report::{LawRecord, Report};

/// Builds `a_0..a_count` from a binary element, checking the generating
/// conditions exactly first. The failed equation is named in the error.
pub fn basepoint_sequence(
    family: &Family,
    a: &Element,
    count: usize,
) -> Result<Vec<Element>, OperadError> {
    if a.arity() != 2 {
        return Err(OperadError::Precondition(format!(
            "basepoint generator must have arity 2, got {}",
            a.arity()
        )));
    }
    family.validate(a)?;
    let e1 = family.identity(1);
    for i in 1..=2 {
        let face = family.face(a, i)?;
        if !family.equals(&face, &e1) {
            return Err(OperadError::Precondition(format!(
                "d_{i}(a) = e_1 fails for a = {a}"
            )));
        }
    }
    let left = family.gamma(a, &[e1.clone(), a.clone()])?;
    let right = family.gamma(a, &[a.clone(), e1.clone()])?;
    if !family.equals(&left, &right) {
        return Err(OperadError::Precondition(format!(
            "gamma(a; 1, a) = gamma(a; a, 1) fails for a = {a}"
        )));
    }

    let mut seq = vec![family.identity(0), family.identity(1)];
    if count >= 2 {
        seq.push(a.clone());
    }
    for _ in 3..=count {
        let prev = seq.last().expect("nonempty").clone();
        seq.push(family.gamma(a, &[prev, family.identity(1)])?);
    }
    Ok(seq)
}

/// Verifies `gamma(a_k; a_{m_1}, ..., a_{m_k}) = a_m` for every
/// composition within the sequence.
pub fn basepoint_coherence(family: &Family, seq: &[Element]) -> Report {
    let mut report = Report::new();
    let top = seq.len() - 1;
    let mut checked = 0usize;
    let mut witness = None;
    'outer: for k in 1..=top {
        for m in 0..=top {
            for comp in compositions_exact(m, k) {
                checked += 1;
                let inners: Vec<Element> = comp.iter().map(|&mi| seq[mi].clone()).collect();
                match family.gamma(&seq[k], &inners) {
                    Ok(v) if family.equals(&v, &seq[m]) => {}
                    _ => {
                        witness = Some(format!("k={k} widths={comp:?}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    report.push(match witness {
        None => LawRecord::pass("basepoint-coherence", family.tag(), checked),
        Some(w) => LawRecord::fail("basepoint-coherence", family.tag(), checked, w),
    });
    report
}
