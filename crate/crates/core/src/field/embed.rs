//! Field embeddings along the tower. An embedding F_{p^d} -> F_{p^(dt)}
//! is fixed by sending the class of x to a root of the source modulus in
//! the target; we take the first root met while walking the powers of
//! the canonical subfield generator, so the map is deterministic for a
//! given pair of descriptors.

use super::{eval_raw_poly, Field, FieldElement};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct Embedding {
    src: Field,
    dst: Field,
    image_of_x: FieldElement,
}

impl Embedding {
    pub fn new(src: &Field, dst: &Field) -> Result<Embedding> {
        if src.characteristic() != dst.characteristic() || dst.degree() % src.degree() != 0 {
            return Err(Error::BadInput(format!(
                "{src} does not embed into {dst}"
            )));
        }
        if src == dst {
            let p = src.characteristic();
            let image_of_x = if src.degree() == 1 {
                dst.from_int(p - src.modulus()[0] % p) // root of x + c
            } else {
                dst.element_at(p as u128).expect("degree >= 2")
            };
            return Ok(Embedding {
                src: src.clone(),
                dst: dst.clone(),
                image_of_x,
            });
        }
        let subgroup = src.order() - 1;
        let delta = dst
            .primitive_element()
            .pow((dst.order() - 1) / subgroup);
        let mut cand = dst.one();
        for _ in 0..subgroup {
            if eval_raw_poly(src.modulus(), &cand).is_zero() {
                return Ok(Embedding {
                    src: src.clone(),
                    dst: dst.clone(),
                    image_of_x: cand,
                });
            }
            cand = &cand * &delta;
        }
        Err(Error::InternalInconsistency(format!(
            "no root of the {src} modulus found in {dst}"
        )))
    }

    pub fn source(&self) -> &Field {
        &self.src
    }

    pub fn target(&self) -> &Field {
        &self.dst
    }

    pub fn map(&self, e: &FieldElement) -> Result<FieldElement> {
        if e.field() != &self.src {
            return Err(Error::FieldMismatch(
                e.field().to_string(),
                self.src.to_string(),
            ));
        }
        Ok(eval_raw_poly(e.rep(), &self.image_of_x))
    }
}
