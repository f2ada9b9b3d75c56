use crate::fingroup::{closure, ElemId, GroupHandle, Subgroup};

use super::basic::{cyclic, direct_product, heisenberg3};
use super::matrix::{gl2, Mat2};
use super::semidirect::{semidirect_named, ActionSpec, Semidirect};

/// Group-spec text that [`build_w`] constructs; `W4374` is shorthand for it.
pub const W_SPEC: &str =
    "sd(prod(Z(9),Z(9)), prod(heis3,Z(2)); x=[[1,-1],[3,-2]], y=[[-2,0],[0,4]], t=[[-1,0],[0,-1]])";

/// The matrices `X`, `Y`, `T` over `Z/9` by which `x`, `y`, `t` act.
pub fn w_matrices() -> (Mat2, Mat2, Mat2) {
    (
        Mat2::new(9, [[1, -1], [3, -2]]),
        Mat2::new(9, [[-2, 0], [0, 4]]),
        Mat2::new(9, [[-1, 0], [0, -1]]),
    )
}

/// `W = (Z/9 x Z/9) x| (H3 x Z/2)` with its named pieces.
#[derive(Clone, Debug)]
pub struct WGroup {
    pub semi: Semidirect,
    pub x: Mat2,
    pub y: Mat2,
    pub t: Mat2,
}

impl WGroup {
    pub fn group(&self) -> &GroupHandle {
        &self.semi.group
    }

    /// The normal factor `N = Z/9 x Z/9`.
    pub fn n(&self) -> Subgroup {
        self.semi.normal_subgroup()
    }

    /// The complement `K = H3 x Z/2`.
    pub fn k(&self) -> Subgroup {
        self.semi.complement()
    }

    /// The copy of `H3` inside the complement.
    pub fn heisenberg_part(&self) -> Subgroup {
        let gens = &self.semi.acting.generators()[..2];
        self.semi.acting_subgroup(gens)
    }

    /// The copy of `Z/2` inside the complement.
    pub fn t_part(&self) -> Subgroup {
        let gens = &self.semi.acting.generators()[2..];
        self.semi.acting_subgroup(gens)
    }

    /// Complement generators `x`, `y`, `t` as elements of `W`.
    pub fn k_generators(&self) -> Vec<ElemId> {
        self.semi
            .acting
            .generators()
            .iter()
            .map(|&k| self.semi.embed_acting(k))
            .collect()
    }

    /// The image of the action inside `GL_2(Z/9)`.
    pub fn action_image(&self) -> Subgroup {
        let gl = gl2(9);
        let seeds: Vec<ElemId> = [self.x, self.y, self.t]
            .iter()
            .map(|m| {
                gl.lookup(&crate::fingroup::Element(m.entries().to_vec()))
                    .expect("invertible")
            })
            .collect();
        closure(&gl, &seeds)
    }
}

pub fn build_w() -> WGroup {
    let (x, y, t) = w_matrices();
    let n = direct_product(&[cyclic(9), cyclic(9)]);
    let k = direct_product(&[heisenberg3(), cyclic(2)]);
    let action = ActionSpec::matrices([("x", x.rows()), ("y", y.rows()), ("t", t.rows())]);
    let semi = semidirect_named(&n, &k, &action, "W4374".into())
        .expect("the action on Z/9 x Z/9 is valid");
    WGroup { semi, x, y, t }
}
