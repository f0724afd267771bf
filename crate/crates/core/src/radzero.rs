//! Closed-form dimensions of HH¹(A|B) for radical-square-zero pairs.

use serde::Serialize;

use crate::algebra::SubalgebraPair;
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::relative::RelativeHh1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassKind {
    /// the ambient class has no arrow of B
    #[serde(rename = "D")]
    D,
    /// the ambient class has at least one arrow of B
    #[serde(rename = "E")]
    E,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementClass {
    pub source: u32,
    pub target: u32,
    pub arrows: Vec<String>,
    /// |α|: arrows of the class outside B
    pub size: usize,
    /// |α'|: arrows of the ambient class inside B
    pub sub_size: usize,
    /// |α''|: size of the ambient class
    pub ambient_size: usize,
    pub kind: ClassKind,
    /// |α| > 1
    pub in_s: bool,
}

/// Parallel classes of the complement quiver, in order of first appearance in A.
pub fn classify_complement(pair: &SubalgebraPair) -> Result<Vec<ComplementClass>> {
    for (alg, what) in [(pair.ambient(), "algebra"), (pair.sub(), "subalgebra")] {
        if !alg.is_radical_square_zero() {
            return Err(Error::NotRadicalSquareZero(format!(
                "{what} {} has a nonzero path of length 2",
                alg.name()
            )));
        }
    }
    let q = pair.ambient().quiver();
    let mut out = Vec::new();
    for cls in q.parallel_classes() {
        let outside: Vec<usize> = cls.arrows.iter().copied().filter(|&a| !pair.is_sub_arrow(a)).collect();
        if outside.is_empty() {
            continue;
        }
        let sub_size = cls.size() - outside.len();
        out.push(ComplementClass {
            source: cls.source,
            target: cls.target,
            arrows: q.arrow_names(&outside),
            size: outside.len(),
            sub_size,
            ambient_size: cls.size(),
            kind: if sub_size == 0 { ClassKind::D } else { ClassKind::E },
            in_s: outside.len() > 1,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemisimpleFactor {
    #[serde(rename = "type")]
    pub kind: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalBlock {
    pub arrows: Vec<String>,
    /// |α|·|α'|
    pub ideal_dim: usize,
    pub scalar: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureDescriptor {
    pub semisimple: Vec<SemisimpleFactor>,
    pub radical_blocks: Vec<RadicalBlock>,
    pub abelian_tail: usize,
    pub total_dim: usize,
    pub semisimple_dim: usize,
    pub radical_dim: usize,
}

/// Number of connected components of B minus that of A: the rank of Im δ⁰_{A|B} here.
pub fn relative_image_rank(pair: &SubalgebraPair) -> usize {
    pair.sub().quiver().component_count() - pair.ambient().quiver().component_count()
}

pub fn closed_form_hh1<F: Field>(pair: &SubalgebraPair, field: &F) -> Result<StructureDescriptor> {
    if field.characteristic() != 0 {
        return Err(Error::UnsupportedField(field.characteristic()));
    }
    let classes = classify_complement(pair)?;
    let semisimple: Vec<SemisimpleFactor> = classes
        .iter()
        .filter(|c| c.in_s)
        .map(|c| SemisimpleFactor {
            kind: "sl".into(),
            size: c.size,
        })
        .collect();
    let radical_blocks: Vec<RadicalBlock> = classes
        .iter()
        .filter(|c| c.kind == ClassKind::E)
        .map(|c| RadicalBlock {
            arrows: c.arrows.clone(),
            ideal_dim: c.size * c.sub_size,
            scalar: 1,
        })
        .collect();
    let d_count = classes.iter().filter(|c| c.kind == ClassKind::D).count();
    let rank = relative_image_rank(pair);
    let abelian_tail = d_count.checked_sub(rank).ok_or_else(|| {
        Error::Verification("relative image rank exceeds the number of D classes".into())
    })?;
    let semisimple_dim: usize = semisimple.iter().map(|f| f.size * f.size - 1).sum();
    let radical_dim = radical_blocks.iter().map(|b| b.ideal_dim + b.scalar).sum::<usize>() + abelian_tail;
    Ok(StructureDescriptor {
        semisimple,
        radical_blocks,
        abelian_tail,
        total_dim: semisimple_dim + radical_dim,
        semisimple_dim,
        radical_dim,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub total: usize,
    pub semisimple: usize,
    pub radical: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CrossCheck {
    Ok(&'static str),
    Diff { generic: Dims, closed_form: Dims },
}

impl CrossCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, CrossCheck::Ok(_))
    }
}

/// Dims of HH¹(A|B) from the complex and the Killing radical, over ℚ.
pub fn generic_dims(pair: &SubalgebraPair) -> Result<Dims> {
    let rel = RelativeHh1::new(pair, &Rationals)?;
    let lie = rel.lie()?;
    let r = lie.verified_radical()?;
    Ok(Dims {
        total: lie.dim(),
        semisimple: lie.dim() - r.dim(),
        radical: r.dim(),
    })
}

pub fn cross_check(pair: &SubalgebraPair) -> Result<(StructureDescriptor, CrossCheck)> {
    let desc = closed_form_hh1(pair, &Rationals)?;
    let closed = Dims {
        total: desc.total_dim,
        semisimple: desc.semisimple_dim,
        radical: desc.radical_dim,
    };
    let generic = generic_dims(pair)?;
    let verdict = if generic == closed {
        CrossCheck::Ok("ok")
    } else {
        CrossCheck::Diff {
            generic,
            closed_form: closed,
        }
    };
    Ok((desc, verdict))
}

#[derive(Clone, Debug, Serialize)]
pub struct RadzeroReport {
    pub classes: Vec<ComplementClass>,
    pub descriptor: StructureDescriptor,
    pub crosscheck: CrossCheck,
}

pub fn report(pair: &SubalgebraPair) -> Result<RadzeroReport> {
    let classes = classify_complement(pair)?;
    let (descriptor, crosscheck) = cross_check(pair)?;
    Ok(RadzeroReport {
        classes,
        descriptor,
        crosscheck,
    })
}
