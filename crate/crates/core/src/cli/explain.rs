/// `(check id, one-paragraph description)`. Every id a report can contain
/// has an entry here.
pub const REGISTRY: &[(&str, &str)] = &[
    (
        "geometry.diamond",
        "Causal completion of a cylinder. The cylinder C = {|x| < 3, |t| < 2} is rasterized on \
         the window, its spacelike complement C' is taken twice, and the cell count of C'' is \
         compared with the exact diamond |t| + |x| < 5. Cells are spacelike when |Δcol| > |Δrow|; \
         the discrepancy allowed is 2% of the exact count, one boundary band of cells.",
    ),
    (
        "geometry.lens",
        "Domain of dependence of the cylinder. D(C) collects the cells all of whose lattice \
         paths to the past or future boundary cross C. It should be the lens \
         {|x| < 3, |t| + |x| < 5}, within 2% of the exact count, and a strict subset of C''.",
    ),
    (
        "geometry.tiling",
        "The diamond splits into the cylinder C, the time caps D(C) \\ C and the space caps \
         C'' \\ D(C). The three parts must be disjoint with union C''. The metrics give the cell \
         count of each part.",
    ),
    (
        "geometry.wedges",
        "Spacelike complement of the cylinder against the exact wedges |x| > |t| + 5. Cells whose \
         centre lies within one cell width of the wedge boundary are skipped.",
    ),
    (
        "geometry.galois",
        "Galois connection of the causal complement on 100 random regions of a 12 x 12 grid: \
         o ⊆ o'' and o''' = o', exactly at the cell level.",
    ),
    (
        "algebra.commutant_tensor",
        "The commutant of M_2 ⊗ I inside M_4 is I ⊗ M_2, a 4-dimensional algebra.",
    ),
    (
        "algebra.bicommutant",
        "Von Neumann's bicommutant theorem in finite dimensions: for 50 algebras generated by \
         random elements of conjugated block algebras with d ≤ 16, A'' = A. Both the dimension \
         and the span (residual at most 1e-10 for every basis element) must agree.",
    ),
    (
        "algebra.factor_library",
        "A factor has trivial center Z(A) = A ∩ A' = C·I. Tensor factors M_m ⊗ I, full matrix \
         algebras and the scalars must be reported as factors; diagonal algebras and algebras \
         generated by a single Pauli product must not.",
    ),
    (
        "algebra.no_signaling",
        "No-signaling for commuting observables. With A in an algebra and B in its commutant, \
         the Lüders map T^A(ρ) = Σ E_i ρ E_i over the spectral projectors of A leaves ω(B) \
         unchanged: |ω(T^A(B)) − ω(B)| ≤ 1e-12 over 1000 random triples (A, B, ρ), with A and B \
         scaled to unit operator norm.",
    ),
    (
        "algebra.no_signaling_noncommuting",
        "Control. Measuring X on |0⟩ changes ⟨Z⟩ from 1 to 0. The gap must be at least 0.1; this \
         shows the no-signaling check can fail when [A, B] ≠ 0. It does not affect the exit code.",
    ),
    (
        "algebra.independence",
        "Statistical independence of commuting tensor factors: for the product state ω₁ ⊗ ω₂ on \
         M_2 ⊗ M_3, ω(AB) = ω₁(A)ω₂(B) for Hermitian bases of both factors and the partial \
         traces return ω₁ and ω₂.",
    ),
    (
        "algebra.independence_entangled",
        "Control. The Bell state correlates M_2 ⊗ I and I ⊗ M_2, so ω(AB) ≠ ω(A)ω(B) for some \
         pair. The check passes when independence fails. It does not affect the exit code.",
    ),
    (
        "sc.spectrum",
        "Spectrum condition of the lattice Klein-Gordon field. The mode frequencies \
         ω_j² = m² + (4/a²) sin²(πj/N) are all at least m > 0, so the energy is bounded below \
         and the Fock vacuum is the unique ground state.",
    ),
    (
        "mc.pauli_jordan",
        "Microcausality of the free field. The commutator function \
         Δ(t, n) = (1/N) Σ_j sin(ω_j t)/ω_j cos(2πjn/N) is compared inside the lightcone \
         |n·a| ≤ t and beyond it by a margin of 5 sites at t = 50. The outside maximum must be at \
         least 10³ times smaller than the inside maximum. The lattice is only approximately \
         causal, so the tail is small but not zero.",
    ),
    (
        "mc.equal_time",
        "Equal-time commutator: Δ(0, n) = 0 at every site, to 1e-12.",
    ),
    (
        "mc.canonical_normalization",
        "Canonical commutation relation: ∂_t Δ(0, n) = δ_{n0}, by a central difference with \
         dt = 1e-4, to 1e-6.",
    ),
    (
        "mc.refinement",
        "Continuum limit of microcausality: at fixed length N·a the suppression ratio of \
         mc.pauli_jordan must decrease strictly over N/4, N/2 and N sites.",
    ),
    (
        "pc.domain_of_dependence",
        "Primitive causality for the field. Two sets of Cauchy data that agree on an interval are \
         evolved exactly mode by mode. Their fields must agree to 1e-6 at every site whose \
         backward cone, widened by an 8-site margin, stays inside the interval.",
    ),
    (
        "pc.nonvacuity",
        "Control for pc.domain_of_dependence: at the latest time the two evolutions differ by \
         at least 1e-2 somewhere in the interval outside the shrunken cone, so the agreement \
         inside is not trivial.",
    ),
    (
        "protocols.sorkin_signaling",
        "Control. Sorkin's three-region chain: a unitary kick in region 1, a nonselective \
         measurement of the Bell projector in region 2 straddling both qubits, and a Z \
         measurement in region 3. The probability of the region 3 outcome shifts by exactly 0.5, \
         so an ideal nonlocal measurement signals. It does not affect the exit code.",
    ),
    (
        "protocols.sorkin_local",
        "Sorkin's chain with the region 2 measurement replaced by local product projectors: the \
         region 3 statistics are unchanged, gap ≤ 1e-12.",
    ),
    (
        "protocols.fermi_silence",
        "Fermi's two-atom problem on a 10-qubit brick-wall chain with the atoms R = 6 sites \
         apart. Atom B is excited at t = 0; the reduced state of atom A must be unchanged, in \
         trace distance ≤ 1e-12, for every t < R over 100 random gate seeds.",
    ),
    (
        "protocols.fermi_arrival",
        "The same setup after the lightcone arrives: for generic entangling gates the reduced \
         state of atom A changes by more than 1e-3 at some t > R.",
    ),
    (
        "net.isotony",
        "Isotony of the circuit net: O₁ ⊆ O₂ implies A(O₁) ⊆ A(O₂), on 200 random nested pairs. \
         A region's algebra is generated by the Heisenberg-picture Paulis of its cells.",
    ),
    (
        "net.microcausality",
        "Microcausality of the circuit net: generators of cells whose layer-0 support cones are \
         disjoint commute, every entry of [X, Y] at most 1e-12.",
    ),
    (
        "net.slice_generation",
        "Primitive causality of the circuit net: the algebra of every full layer is all of \
         M_{2^n}.",
    ),
    (
        "net.sub_slice",
        "Control. A layer with one site removed generates a proper subalgebra, so slice \
         generation is a real condition. It does not affect the exit code.",
    ),
    (
        "net.time_slice",
        "Proof replay, setup: the layers spanned by the cylinder C generate every operator.",
    ),
    (
        "net.premise1",
        "Proof replay, premise 1: A(C ∪ C_r) = A(C), where C_r are the cells of C'' in the layers \
         of C but outside C. It is checked directly as an equality of region algebras.",
    ),
    (
        "net.premise2",
        "Proof replay, premise 2: A(C ∪ C_r) and A(C') together generate all of M_{2^n}. Cells of \
         the time slice in neither set are reported as neglected caps.",
    ),
    (
        "net.premise3",
        "Proof replay, premise 3: A(C) is a factor, witnessed by a trivial center and by \
         A(C) ∨ A(C)' = M_{2^n}.",
    ),
    (
        "net.duality",
        "Proof replay, essential duality: A(C')' = A(C''), with both sides computed separately.",
    ),
    (
        "net.mc_inclusion",
        "Proof replay, microcausality step: A(C) ⊆ A(C')'.",
    ),
    (
        "net.reductio_inclusion",
        "Proof replay, reverse inclusion: A(C'') ⊆ A(C). Together with the previous step and \
         duality this gives A(C) = A(C'').",
    ),
    (
        "net.conclusion",
        "Proof replay, conclusion: local primitive causality A(C) = A(C'') for the cylinder.",
    ),
    (
        "net.implication",
        "Over every cylinder of 1 to 3 sites and 1 to 2 layers that fits the net, premises 1 to \
         3 together with duality imply A(C) = A(C''). Cylinders where a premise fails are \
         counted but are not violations.",
    ),
];

pub fn explain(id: &str) -> Option<&'static str> {
    REGISTRY.iter().find(|(k, _)| *k == id).map(|(_, v)| *v)
}
