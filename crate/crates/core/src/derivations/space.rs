use super::action::ModuleAction;
use crate::error::DerivationError;
use crate::group::{binomial, log_p, Elem, FiniteGroup};
use crate::linalg::{FpMatrix, FpSubspace, FpVector};
use crate::pc::PcGroup;
use crate::structure::Subgroup;

/// A derivation `Ḡ → Z(Φ(G))`, stored as the images `b_i` of `x̄_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    images: Vec<Elem>,
}

impl Derivation {
    /// Checked constructor: the images must satisfy the extension conditions.
    pub fn new(g: &PcGroup, action: &ModuleAction, images: Vec<Elem>) -> Result<Self, DerivationError> {
        if images.len() != action.rank() || !extension_check(g, action, &images) {
            return Err(DerivationError::NotADerivation);
        }
        Ok(Self { images })
    }

    pub fn zero(action: &ModuleAction) -> Self {
        Self { images: vec![0; action.rank()] }
    }

    pub(crate) fn from_vector(action: &ModuleAction, v: &FpVector) -> Self {
        Self { images: v.blocks(action.rank()).iter().map(|b| action.to_element(b)).collect() }
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|&b| b == 0)
    }

    /// The images in `A`-coordinates, concatenated block by block.
    pub fn to_vector(&self, action: &ModuleAction) -> Result<FpVector, DerivationError> {
        let blocks = self.images.iter().map(|&b| action.to_vector(b)).collect::<Result<Vec<_>, _>>()?;
        Ok(FpVector::concat(&blocks))
    }
}

/// Whether `x̄_i ↦ b_i` extends to a derivation: each `b_i` lies in `A`,
/// `b_i·b_i^{x_i}···b_i^{x_i^{p−1}} = 1`, and `[b_i, x_j] = [b_j, x_i]`.
/// Evaluated with group multiplication only.
pub fn extension_check(g: &PcGroup, action: &ModuleAction, images: &[Elem]) -> bool {
    let xs = action.transversal();
    if images.len() != xs.len() || images.iter().any(|&b| !action.a().contains(b)) {
        return false;
    }
    let p = g.prime();
    for (&b, &x) in images.iter().zip(xs) {
        let mut term = b;
        let mut prod = g.identity();
        for _ in 0..p {
            prod = g.mul(prod, term);
            term = g.conj(term, x);
        }
        if prod != g.identity() {
            return false;
        }
    }
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if g.comm(images[i], xs[j]) != g.comm(images[j], xs[i]) {
                return false;
            }
        }
    }
    true
}

/// The matrix `E` of the linear conditions on `t_{lj}`, where
/// `b_j = Σ_l t_{lj} c_l` over the basis `c_1..c_r` of `C`.
///
/// Columns come in `n` blocks of `r`, block `i` holding `t_{·i}`. Rows are
/// indexed by `(i, j, q)` with `i < j`, in lexicographic order; the row for
/// `(i, j, q)` carries `m^q_{j·}` in block `i` and `−m^q_{i·}` in block `j`,
/// where `[c_l, x_i] = Σ_q m^q_{il} d_q`.
pub fn constraint_matrix(action: &ModuleAction, c: &FpSubspace, d: &FpSubspace) -> Result<FpMatrix, DerivationError> {
    let p = action.prime();
    let n = action.rank();
    let r = c.dim();
    let s = d.dim();
    let id = FpMatrix::identity(p, action.dim());
    // m[i][l] = D-coordinates of [c_l, x_i]
    let mut m: Vec<Vec<FpVector>> = Vec::with_capacity(n);
    for i in 0..n {
        let shift = action.action_matrix(i).sub(&id);
        let mut row = Vec::with_capacity(r);
        for b in c.basis() {
            let image = shift.mul_vec(b).expect("dims");
            row.push(d.coordinates(&image).ok_or(DerivationError::ConstraintHypothesis(i))?);
        }
        m.push(row);
    }
    let rows = binomial(n, 2) * s;
    let mut e = FpMatrix::zeros(p, rows, r * n);
    let mut row = 0;
    for i in 0..n {
        for j in i + 1..n {
            for q in 0..s {
                for l in 0..r {
                    e.set(row, i * r + l, m[j][l].entries()[q]);
                    e.set(row, j * r + l, (p - m[i][l].entries()[q]) % p);
                }
                row += 1;
            }
        }
    }
    Ok(e)
}

/// `Der^C(Ḡ, A)` together with the data used to solve for it.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    constraint: FpSubspace,
    bracket: FpSubspace,
    kernel_dims: Vec<usize>,
    space: FpSubspace,
    basis: Vec<Derivation>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `C`.
    pub fn constraint(&self) -> &FpSubspace {
        &self.constraint
    }

    /// The `D` used for the constraint matrix.
    pub fn bracket(&self) -> &FpSubspace {
        &self.bracket
    }

    /// `d(ker τ_{x_i} ∩ C)` per generator.
    pub fn kernel_dims(&self) -> &[usize] {
        &self.kernel_dims
    }

    /// The space as a subspace of `A^n` in block coordinates.
    pub fn space(&self) -> &FpSubspace {
        &self.space
    }

    pub fn basis(&self) -> &[Derivation] {
        &self.basis
    }

    /// `Σ_i d(ker τ_{x_i} ∩ C) − C(n,2)·d(D)`, clamped at zero.
    pub fn lower_bound(&self) -> usize {
        let n = self.kernel_dims.len();
        let total: usize = self.kernel_dims.iter().sum();
        total.saturating_sub(binomial(n, 2) * self.bracket.dim())
    }
}

/// Solve for `Der^C(Ḡ, A)`. The unknowns are first restricted to
/// `∏ ker τ_{x_i} ∩ C`, then `E` is applied in those coordinates.
/// `d` defaults to the span of `[C, x_i]` over all `i`.
pub fn derivation_space(
    g: &PcGroup,
    action: &ModuleAction,
    c: &FpSubspace,
    d: Option<&FpSubspace>,
) -> Result<DerivationSpace, DerivationError> {
    let p = action.prime();
    let n = action.rank();
    let r = c.dim();
    let bracket = match d {
        Some(d) => d.clone(),
        None => action.bracket_span(c),
    };
    let e = constraint_matrix(action, c, &bracket)?;

    let kernels: Vec<FpSubspace> = (0..n).map(|i| action.trace_kernel(i, c)).collect();
    let kernel_dims: Vec<usize> = kernels.iter().map(FpSubspace::dim).collect();
    // columns of B: basis of ∏ (ker τ_i ∩ C) in the t-coordinates of E
    let mut columns = Vec::new();
    for (i, k) in kernels.iter().enumerate() {
        for v in k.basis() {
            let local = c.coordinates(v).expect("kernel lies inside C");
            let mut col = FpVector::zero(p, r * n);
            for l in 0..r {
                col = col.add(&FpVector::unit(p, r * n, i * r + l).scale(local.entries()[l]));
            }
            columns.push(col);
        }
    }
    let ambient = n * action.dim();
    let to_derivation_vector = |t: &FpVector| -> FpVector {
        let blocks: Vec<FpVector> = t
            .blocks(n)
            .iter()
            .map(|tb| {
                c.basis()
                    .iter()
                    .zip(tb.entries())
                    .fold(FpVector::zero(p, action.dim()), |acc, (b, &a)| acc.add(&b.scale(a)))
            })
            .collect();
        FpVector::concat(&blocks)
    };

    let space = if columns.is_empty() {
        FpSubspace::zero(p, ambient)
    } else {
        let b = FpMatrix::from_columns(p, r * n, &columns);
        let reduced = if e.rows() == 0 { FpMatrix::zeros(p, 0, b.cols()) } else { e.mul(&b).expect("dims") };
        let null = nullspace_of(&reduced, b.cols(), p);
        FpSubspace::span(
            p,
            ambient,
            null.iter().map(|y| to_derivation_vector(&b.mul_vec(y).expect("dims"))),
        )
    };
    let basis: Vec<Derivation> = space.basis().iter().map(|v| Derivation::from_vector(action, v)).collect();
    for delta in &basis {
        assert!(extension_check(g, action, delta.images()), "solver produced a non-derivation");
    }
    let out = DerivationSpace { constraint: c.clone(), bracket, kernel_dims, space, basis };
    assert!(out.dim() >= out.lower_bound(), "dimension falls below the counting bound");
    Ok(out)
}

fn nullspace_of(m: &FpMatrix, cols: usize, p: u32) -> Vec<FpVector> {
    if m.rows() == 0 {
        return (0..cols).map(|k| FpVector::unit(p, cols, k)).collect();
    }
    m.nullspace().basis().to_vec()
}

/// `δ(ḡ)` for `ḡ` written as a word in `x̄_1..x̄_n` (letters are indices),
/// via `δ(ūx̄_i) = δ(ū)^{x_i}·b_i`.
pub fn apply_derivation(g: &PcGroup, action: &ModuleAction, delta: &Derivation, word: &[usize]) -> Elem {
    let xs = action.transversal();
    word.iter()
        .fold(g.identity(), |value, &i| g.mul(g.conj(value, xs[i]), delta.images()[i]))
}

/// `δ(xΦ)` for an element `x` of `G`, through the normal form of `x̄`.
pub fn evaluate(g: &PcGroup, action: &ModuleAction, delta: &Derivation, x: Elem) -> Elem {
    apply_derivation(g, action, delta, &bar_word(action.bar_exponents(x)))
}

/// `x̄_1^{e_1}···x̄_n^{e_n}` as a list of letters.
pub fn bar_word(exponents: &[u32]) -> Vec<usize> {
    exponents
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize))
        .collect()
}

/// `φ_a : x̄ ↦ [x, a]`.
pub fn inner_derivation(g: &PcGroup, action: &ModuleAction, a: Elem) -> Result<Derivation, DerivationError> {
    if !action.zphi().contains(a) {
        return Err(DerivationError::NotInZPhi(a));
    }
    Ok(Derivation { images: action.transversal().iter().map(|&x| g.comm(x, a)).collect() })
}

/// `Ider(Ḡ, W) = {φ_a : a ∈ W}` for `W ≤ A*`, as a subspace of `A^n`.
pub fn inner_space(g: &PcGroup, action: &ModuleAction, w: &Subgroup) -> Result<FpSubspace, DerivationError> {
    if let Some(&a) = w.members().iter().find(|&&a| !action.a_star().contains(a)) {
        return Err(DerivationError::NotInAStar(a));
    }
    let vs = w
        .generators()
        .iter()
        .map(|&a| inner_derivation(g, action, a)?.to_vector(action))
        .collect::<Result<Vec<_>, _>>()?;
    let space = FpSubspace::span(action.prime(), action.rank() * action.dim(), vs);
    // a ↦ φ_a is a homomorphism on W with kernel W ∩ Z(G)
    let kernel = w.intersect(g, action.center());
    assert_eq!(space.dim(), log_p(g.prime(), w.order() / kernel.order()), "inner derivation count is off");
    Ok(space)
}

/// `(A_i)^n` inside `A^n`: derivations with support in `A_i`.
pub fn support_space(action: &ModuleAction, level: &FpSubspace) -> FpSubspace {
    let n = action.rank();
    let dim = action.dim();
    let p = action.prime();
    FpSubspace::span(
        p,
        n * dim,
        (0..n).flat_map(|i| {
            level.basis().iter().map(move |b| {
                let mut blocks = vec![FpVector::zero(p, dim); n];
                blocks[i] = b.clone();
                FpVector::concat(&blocks)
            })
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const W81: &str = "p=3; n=4; [g2,g1]=g3; [g3,g1]=g4";
    const F3C3: &str = "p=3; n=5; [g2,g1]=g3; [g3,g1]=g4; [g3,g2]=g5";

    fn setup(text: &str) -> (PcGroup, ModuleAction) {
        let g = PcGroup::from_text(text, 1 << 12).unwrap();
        let action = ModuleAction::build(&g).unwrap();
        (g, action)
    }

    #[test]
    fn zero_tuple_is_a_derivation() {
        let (g, action) = setup(W81);
        assert!(extension_check(&g, &action, &[0, 0]));
        assert!(Derivation::new(&g, &action, vec![0, 0]).unwrap().is_zero());
    }

    #[test]
    fn images_outside_a_are_rejected() {
        let (g, action) = setup(W81);
        let x = g.pc_generator(0);
        assert!(!action.a().contains(x));
        assert_eq!(Derivation::new(&g, &action, vec![x, 0]), Err(DerivationError::NotADerivation));
    }

    #[test]
    fn inner_derivation_is_a_commutator() {
        let (g, action) = setup(F3C3);
        for &a in action.zphi().members() {
            let delta = inner_derivation(&g, &action, a).unwrap();
            for x in g.elements() {
                assert_eq!(evaluate(&g, &action, &delta, x), g.comm(x, a));
            }
        }
        let outside = g.pc_generator(0);
        assert_eq!(inner_derivation(&g, &action, outside), Err(DerivationError::NotInZPhi(outside)));
    }

    #[test]
    fn constraint_matrix_shape() {
        let (_, action) = setup(F3C3);
        let c = action.full();
        let d = action.bracket_span(&c);
        let e = constraint_matrix(&action, &c, &d).unwrap();
        let n = action.rank();
        assert_eq!(e.rows(), binomial(n, 2) * d.dim());
        assert_eq!(e.cols(), n * c.dim());
    }

    #[test]
    fn constraint_hypothesis_is_enforced() {
        let (_, action) = setup(F3C3);
        let c = action.full();
        let zero = FpSubspace::zero(action.prime(), action.dim());
        assert!(matches!(constraint_matrix(&action, &c, &zero), Err(DerivationError::ConstraintHypothesis(_))));
    }

    #[test]
    fn dimensions_on_a_free_class_three_quotient() {
        let (g, action) = setup(F3C3);
        let dims: Vec<usize> = (1..=4).map(|i| derivation_space(&g, &action, action.level(i - 1), None).unwrap().dim()).collect();
        assert_eq!(dims, vec![0, 4, 4, 4]);
        let inner = inner_space(&g, &action, action.a_star()).unwrap();
        assert_eq!(inner.dim(), 1);
    }

    #[test]
    fn support_space_counts_blocks() {
        let (_, action) = setup(F3C3);
        let s = support_space(&action, action.level(1));
        assert_eq!(s.dim(), action.rank() * action.level_dim(1));
    }

    #[test]
    fn apply_matches_evaluate_on_words() {
        let (g, action) = setup(W81);
        let space = derivation_space(&g, &action, &action.full(), None).unwrap();
        for delta in space.basis() {
            for x in g.elements() {
                let word = bar_word(action.bar_exponents(x));
                assert_eq!(apply_derivation(&g, &action, delta, &word), evaluate(&g, &action, delta, x));
            }
        }
    }
}
