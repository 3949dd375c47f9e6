use crate::coords::Coordinates;
use crate::error::DerivationError;
use crate::group::{Elem, FiniteGroup};
use crate::linalg::{kernel_within, FpMatrix, FpSubspace, FpVector};
use crate::pc::PcGroup;
use crate::structure::{
    centralizer, frattini, frattini_transversal, omega1, omega1_star, upper_central_series, QuotientGroup,
    Subgroup,
};

/// `Ḡ = G/Φ(G)` acting by conjugation on `A = Ω₁(Z(Φ(G)))`.
///
/// Matrices act on column vectors: column `k` of `M_i` holds the
/// coordinates of `a_k^{x_i}`.
#[derive(Clone, Debug)]
pub struct ModuleAction {
    p: u32,
    class: usize,
    series: Vec<Subgroup>,
    phi: Subgroup,
    zphi: Subgroup,
    a: Subgroup,
    a_star: Subgroup,
    hypothesis: bool,
    transversal: Vec<Elem>,
    coset_of: Vec<u32>,
    coset_exponents: Vec<Vec<u32>>,
    coords: Coordinates,
    actions: Vec<FpMatrix>,
    traces: Vec<FpMatrix>,
    levels: Vec<FpSubspace>,
}

/// `τ_{x_i}` on the coordinates of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceMap {
    pub index: usize,
    pub matrix: FpMatrix,
}

impl ModuleAction {
    pub fn build(g: &PcGroup) -> Result<Self, DerivationError> {
        if g.is_abelian() {
            return Err(DerivationError::Abelian);
        }
        let p = g.prime();
        let series = upper_central_series(g);
        let class = series.len() - 1;
        let phi = frattini(g);
        let zphi = centralizer(g, phi.generators()).intersect(g, &phi);
        let a = omega1(g, &zphi);
        let a_star = omega1_star(g).intersect(g, &zphi);
        let hypothesis = centralizer(g, zphi.generators()) == phi;

        let q = QuotientGroup::new(g, &phi).expect("the Frattini subgroup is normal");
        let transversal: Vec<Elem> = frattini_transversal(g, &phi)
            .into_iter()
            .map(|x| q.representative(q.coset_of(x)))
            .collect();
        let bar_basis: Vec<Elem> = transversal.iter().map(|&x| q.coset_of(x)).collect();
        let bar = Coordinates::new(&q, &bar_basis)?;
        let coset_of: Vec<u32> = g.elements().map(|x| q.coset_of(x)).collect();
        let coset_exponents: Vec<Vec<u32>> =
            q.elements().map(|c| bar.coordinates(c).map(|v| v.entries().to_vec())).collect::<Result<_, _>>()?;

        let coords = Coordinates::new(g, a.generators())?;
        let action_matrix = |x: Elem| -> Result<FpMatrix, DerivationError> {
            let cols = coords
                .basis()
                .iter()
                .map(|&b| coords.coordinates(g.conj(b, x)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FpMatrix::from_columns(p, coords.dim(), &cols))
        };
        let mut actions = Vec::with_capacity(transversal.len());
        for (i, &x) in transversal.iter().enumerate() {
            let m = action_matrix(x)?;
            // a second representative of the same coset must act identically
            for &f in phi.generators() {
                if action_matrix(g.mul(x, f))? != m {
                    return Err(DerivationError::InconsistentAction(i));
                }
            }
            if m.rank() != coords.dim() {
                return Err(DerivationError::SingularAction(i));
            }
            actions.push(m);
        }
        let traces = actions
            .iter()
            .map(|m| (1..p as u64).fold(FpMatrix::identity(p, m.rows()), |acc, e| acc.add(&m.pow(e))))
            .collect();

        let levels = series
            .iter()
            .map(|z| {
                let vs = a
                    .intersect(g, z)
                    .generators()
                    .iter()
                    .map(|&x| coords.coordinates(x))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(FpSubspace::span(p, coords.dim(), vs))
            })
            .collect::<Result<Vec<_>, DerivationError>>()?;

        Ok(Self {
            p,
            class,
            series,
            phi,
            zphi,
            a,
            a_star,
            hypothesis,
            transversal,
            coset_of,
            coset_exponents,
            coords,
            actions,
            traces,
            levels,
        })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// `n = d(G)`, the number of basis cosets.
    pub fn rank(&self) -> usize {
        self.transversal.len()
    }

    pub fn class(&self) -> usize {
        self.class
    }

    /// `d(A)`.
    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    /// Whether `C_G(Z(Φ(G))) = Φ(G)`.
    pub fn hypothesis_holds(&self) -> bool {
        self.hypothesis
    }

    pub fn upper_central_series(&self) -> &[Subgroup] {
        &self.series
    }

    pub fn center(&self) -> &Subgroup {
        &self.series[1]
    }

    pub fn frattini(&self) -> &Subgroup {
        &self.phi
    }

    pub fn zphi(&self) -> &Subgroup {
        &self.zphi
    }

    pub fn a(&self) -> &Subgroup {
        &self.a
    }

    pub fn a_star(&self) -> &Subgroup {
        &self.a_star
    }

    /// `Z_i(G)`, with `Z_i = 1` for `i ≤ 0` and `Z_i = G` beyond the class.
    pub fn z(&self, i: isize) -> &Subgroup {
        let i = i.clamp(0, self.class as isize) as usize;
        &self.series[i]
    }

    /// `A* ∩ Z_i(G)`.
    pub fn a_star_level<G: FiniteGroup + ?Sized>(&self, g: &G, i: isize) -> Subgroup {
        self.a_star.intersect(g, self.z(i))
    }

    /// The chosen representatives `x_1, …, x_n`.
    pub fn transversal(&self) -> &[Elem] {
        &self.transversal
    }

    pub fn coordinates(&self) -> &Coordinates {
        &self.coords
    }

    pub fn action_matrix(&self, i: usize) -> &FpMatrix {
        &self.actions[i]
    }

    /// `A_i` in coordinates; trivial for `i ≤ 0`, all of `A` from the class on.
    pub fn level(&self, i: isize) -> &FpSubspace {
        let i = i.clamp(0, self.class as isize) as usize;
        &self.levels[i]
    }

    /// `d(A_i)`.
    pub fn level_dim(&self, i: isize) -> usize {
        self.level(i).dim()
    }

    pub fn full(&self) -> FpSubspace {
        FpSubspace::full(self.p, self.dim())
    }

    /// Exponents of `ḡ` over `x̄_1, …, x̄_n`.
    pub fn bar_exponents(&self, x: Elem) -> &[u32] {
        &self.coset_exponents[self.coset_of[x as usize] as usize]
    }

    /// Index of the coset `xΦ`; cosets are numbered by their least element.
    pub fn coset_index(&self, x: Elem) -> usize {
        self.coset_of[x as usize] as usize
    }

    pub fn coset_count(&self) -> usize {
        self.coset_exponents.len()
    }

    pub fn coset_exponents(&self, coset: usize) -> &[u32] {
        &self.coset_exponents[coset]
    }

    pub fn trace_map(&self, g: &PcGroup, i: usize) -> TraceMap {
        let t = &self.traces[i];
        assert!(t.mul(t).expect("square").is_zero(), "trace does not square to zero");
        // τ(a) = [a, x, …, x] with p − 1 copies of x
        for (k, &b) in self.coords.basis().iter().enumerate() {
            let direct = g.left_normed_comm(b, self.transversal[i], self.p as usize - 1);
            let via_matrix = self.coords.decode(&t.column(k));
            assert_eq!(direct, via_matrix, "trace disagrees with the iterated commutator");
        }
        TraceMap { index: i, matrix: t.clone() }
    }

    /// `ker τ_{x_i} ∩ C`.
    pub fn trace_kernel(&self, i: usize, c: &FpSubspace) -> FpSubspace {
        kernel_within(&self.traces[i], c)
    }

    /// `d(ker τ_{x_i} ∩ A_j)` for `j = 0..=class`.
    pub fn kernel_filtration(&self, i: usize) -> Vec<usize> {
        let p = self.p as isize;
        let dims: Vec<usize> = (0..=self.class as isize).map(|j| self.trace_kernel(i, self.level(j)).dim()).collect();
        for (j, &d) in dims.iter().enumerate() {
            let j = j as isize;
            if j <= p - 1 {
                assert_eq!(d, self.level_dim(j), "A_{j} is not inside ker τ");
            }
            assert!(d + self.level_dim(j - p + 1) >= self.level_dim(j), "kernel filtration bound fails at level {j}");
        }
        assert!(2 * self.trace_kernel(i, &self.full()).dim() >= self.dim());
        dims
    }

    pub fn to_vector(&self, x: Elem) -> Result<FpVector, DerivationError> {
        Ok(self.coords.coordinates(x)?)
    }

    pub fn to_element(&self, v: &FpVector) -> Elem {
        self.coords.decode(v)
    }

    /// `[C, x_i]` spanned over all `i`, the default choice of `D`.
    pub fn bracket_span(&self, c: &FpSubspace) -> FpSubspace {
        let id = FpMatrix::identity(self.p, self.dim());
        let vs: Vec<FpVector> = self
            .actions
            .iter()
            .flat_map(|m| {
                let shift = m.sub(&id);
                c.basis().iter().map(move |b| shift.mul_vec(b).expect("dims")).collect::<Vec<_>>()
            })
            .collect();
        FpSubspace::span(self.p, self.dim(), vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(text: &str) -> (PcGroup, ModuleAction) {
        let g = PcGroup::from_text(text, 1 << 12).unwrap();
        let a = ModuleAction::build(&g).unwrap();
        (g, a)
    }

    #[test]
    fn wreath_product_module() {
        let (g, action) = build("p=3; n=4; [g2,g1]=g3; [g3,g1]=g4");
        assert_eq!((action.rank(), action.class(), action.dim()), (2, 3, 2));
        assert!(!action.hypothesis_holds());
        assert_eq!((0..=4).map(|i| action.level_dim(i)).collect::<Vec<_>>(), vec![0, 1, 2, 2, 2]);
        assert_eq!(action.transversal(), &[g.pc_generator(0), g.pc_generator(1)]);
        assert_eq!(action.coset_count(), 9);
    }

    #[test]
    fn matrices_agree_with_conjugation() {
        let (g, action) = build("p=3; n=5; [g2,g1]=g3; [g3,g1]=g4; [g3,g2]=g5");
        assert!(action.hypothesis_holds());
        for (i, &x) in action.transversal().iter().enumerate() {
            for &a in action.a().members() {
                let v = action.to_vector(a).unwrap();
                let image = action.action_matrix(i).mul_vec(&v).unwrap();
                assert_eq!(action.to_element(&image), g.conj(a, x));
            }
            let t = action.trace_map(&g, i);
            assert!(t.matrix.mul(&t.matrix).unwrap().is_zero());
        }
    }

    #[test]
    fn abelian_groups_are_rejected() {
        let g = PcGroup::from_text("p=2; n=3", 1 << 12).unwrap();
        assert!(matches!(ModuleAction::build(&g), Err(DerivationError::Abelian)));
    }
}
