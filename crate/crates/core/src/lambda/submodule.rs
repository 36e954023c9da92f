use crate::abelian::{extract_basis, GroupAutomorphism};

use super::{LambdaModule, ModuleError};

/// A Λ-submodule of a parent module, together with the same submodule as an
/// abstract module in invariant-factor coordinates.
#[derive(Debug, Clone)]
pub struct Submodule {
    parent_order: usize,
    members: Vec<usize>,
    /// Abstract index -> parent element.
    embedding: Vec<usize>,
    /// Parent element -> abstract index, `usize::MAX` outside the submodule.
    position: Vec<usize>,
    module: LambdaModule,
}

impl Submodule {
    /// Wraps a set of parent elements, which must contain 0 and be closed
    /// under addition, `t` and `t⁻¹`.
    pub fn new(parent: &LambdaModule, members: impl IntoIterator<Item = usize>) -> Result<Self, ModuleError> {
        let n = parent.order();
        let mut inside = vec![false; n];
        for x in members {
            if x >= n {
                return Err(ModuleError::NotClosed);
            }
            inside[x] = true;
        }
        let members: Vec<usize> = (0..n).filter(|&x| inside[x]).collect();
        if !inside[0] {
            return Err(ModuleError::NotClosed);
        }
        for &x in &members {
            if !inside[parent.t(x)] || !inside[parent.t_inv(x)] {
                return Err(ModuleError::NotClosed);
            }
            for &y in &members {
                if !inside[parent.add(x, y)] {
                    return Err(ModuleError::NotClosed);
                }
            }
        }
        Ok(Self::recoordinatize(parent, members))
    }

    fn recoordinatize(parent: &LambdaModule, members: Vec<usize>) -> Self {
        let add = |a, b| parent.add(a, b);
        let basis = extract_basis(&members, parent.order(), add);
        let group = basis.group();
        let embedding = basis.embedding(&group, add);
        let mut position = vec![usize::MAX; parent.order()];
        for (i, &x) in embedding.iter().enumerate() {
            position[x] = i;
        }
        let images = basis.gens.iter().map(|&g| position[parent.t(g)]).collect();
        let t = GroupAutomorphism::new(&group, images).expect("t restricts to an automorphism");
        let module = LambdaModule::from_parts(group, t, None);
        Submodule { parent_order: parent.order(), members, embedding, position, module }
    }

    /// Parent elements in increasing order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position.get(x).is_some_and(|&p| p != usize::MAX)
    }

    /// The submodule as an abstract module.
    pub fn module(&self) -> &LambdaModule {
        &self.module
    }

    /// Parent element for an abstract index.
    pub fn to_parent(&self, i: usize) -> usize {
        self.embedding[i]
    }

    /// Abstract index of a parent element.
    pub fn from_parent(&self, x: usize) -> Option<usize> {
        self.position.get(x).copied().filter(|&p| p != usize::MAX)
    }
}

/// `(1 - t)^power M`.
pub fn image_one_minus_t(m: &LambdaModule, power: u32) -> Submodule {
    let mut inside = vec![false; m.order()];
    for x in m.group().elements() {
        let mut y = x;
        for _ in 0..power {
            y = m.one_minus_t(y);
        }
        inside[y] = true;
    }
    let members = (0..m.order()).filter(|&x| inside[x]).collect();
    Submodule::recoordinatize(m, members)
}

/// The `p`-primary part: elements whose order is a power of `p`.
pub fn primary_component(m: &LambdaModule, p: usize) -> Submodule {
    let members = m
        .group()
        .elements()
        .filter(|&x| {
            let mut o = m.group().element_order(x);
            while o.is_multiple_of(p) {
                o /= p;
            }
            o == 1
        })
        .collect();
    Submodule::recoordinatize(m, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gcd;
    use crate::lambda::{lambda_iso, Polynomial};

    fn poly(n: usize, c: &[i64]) -> LambdaModule {
        LambdaModule::from_polynomial(&Polynomial::new(n, c).unwrap()).unwrap()
    }

    fn assert_closed(m: &LambdaModule, s: &Submodule) {
        assert!(s.contains(0));
        for &x in s.members() {
            assert!(s.contains(m.t(x)));
            assert!(s.contains(m.t_inv(x)));
            for &y in s.members() {
                assert!(s.contains(m.add(x, y)));
            }
        }
        assert_eq!(m.order() % s.order(), 0);
    }

    #[test]
    fn image_of_t_squared_plus_one() {
        let m = poly(2, &[1, 0, 1]);
        let im = image_one_minus_t(&m, 1);
        assert_eq!(im.order(), 2);
        assert!(lambda_iso(im.module(), &poly(2, &[1, 1])).is_some());
    }

    #[test]
    fn image_of_trivial_action_is_zero() {
        let m = poly(2, &[1, 1]);
        let sq = crate::lambda::direct_sum(&m, &m);
        assert_eq!(image_one_minus_t(&sq, 1).order(), 1);
        assert_eq!(image_one_minus_t(&sq, 1).module().order(), 1);
    }

    #[test]
    fn image_of_t_squared_plus_t_plus_one_over_z3() {
        let m = poly(3, &[1, 1, 1]);
        let im = image_one_minus_t(&m, 1);
        assert_eq!(im.order(), 3);
        assert!(lambda_iso(im.module(), &poly(3, &[2, 1])).is_some());
    }

    #[test]
    fn images_are_nested_closed_submodules() {
        for m in [poly(2, &[1, 1, 1, 1]), poly(3, &[1, 1, 1]), poly(4, &[1, 1]), poly(2, &[1, 0, 0, 0, 1])] {
            let im1 = image_one_minus_t(&m, 1);
            let im2 = image_one_minus_t(&m, 2);
            assert_closed(&m, &im1);
            assert_closed(&m, &im2);
            assert!(im2.members().iter().all(|&x| im1.contains(x)));
        }
    }

    #[test]
    fn linear_image_order_is_n_over_gcd() {
        for n in 2..=15usize {
            for a in (1..n).filter(|&a| gcd(a as u64, n as u64) == 1) {
                let m = LambdaModule::linear(n, a).unwrap();
                let expected = n / gcd(n as u64, ((n + 1 - a) % n) as u64) as usize;
                assert_eq!(image_one_minus_t(&m, 1).order(), expected, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn abstract_module_mirrors_parent_action() {
        let m = poly(2, &[1, 1, 1, 1]);
        let im = image_one_minus_t(&m, 1);
        for i in im.module().group().elements() {
            let x = im.to_parent(i);
            assert_eq!(im.from_parent(x), Some(i));
            assert_eq!(im.to_parent(im.module().t(i)), m.t(x));
            for j in im.module().group().elements() {
                assert_eq!(im.to_parent(im.module().add(i, j)), m.add(x, im.to_parent(j)));
            }
        }
    }

    #[test]
    fn explicit_submodule_validation() {
        let m = LambdaModule::linear(9, 4).unwrap();
        assert!(Submodule::new(&m, [0, 3, 6]).is_ok());
        assert!(matches!(Submodule::new(&m, [0, 3]), Err(ModuleError::NotClosed)));
        assert!(matches!(Submodule::new(&m, [3, 6]), Err(ModuleError::NotClosed)));
        // Closed under + but not under t.
        let m = poly(2, &[1, 0, 1]);
        assert!(matches!(Submodule::new(&m, [0, 1]), Err(ModuleError::NotClosed)));
    }

    #[test]
    fn primary_parts() {
        let m = LambdaModule::linear(12, 5).unwrap();
        assert_eq!(primary_component(&m, 2).order(), 4);
        assert_eq!(primary_component(&m, 3).order(), 3);
        assert_eq!(primary_component(&m, 5).order(), 1);
    }
}
