//! Exact construction and certification of the grading induced by a
//! MAD-group descriptor.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::monomial::{sum_phases, PartialMonomial, Phase};
use crate::pauli::WhGroupElement;

use super::MadGroupDescriptor;

/// Position of a piece inside the `D(m)` factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanLabel {
    /// The `m`-dimensional diagonal subalgebra.
    Diagonal,
    /// The root space spanned by `E_ij`, `i ≠ j`.
    Root(usize, usize),
}

/// Phase-space label `(a, b)` for each Pauli factor plus the Cartan label,
/// which is absent when `m = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PieceLabel {
    pub pauli: Vec<(u64, u64)>,
    pub cartan: Option<CartanLabel>,
}

impl fmt::Display for PieceLabel {
    /// `(0,1)(1,1)`, followed by `diag` or `E(i,j)` when `m > 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.pauli {
            write!(f, "({a},{b})")?;
        }
        let sep = if self.pauli.is_empty() { "" } else { " " };
        match self.cartan {
            None if self.pauli.is_empty() => write!(f, "I"),
            None => Ok(()),
            Some(CartanLabel::Diagonal) => write!(f, "{sep}diag"),
            Some(CartanLabel::Root(i, j)) => write!(f, "{sep}E({i},{j})"),
        }
    }
}

/// One graded subspace with an explicit basis of partial monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub label: PieceLabel,
    /// Basis matrices with pairwise disjoint supports.
    pub basis: Vec<PartialMonomial>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Exact membership test for `x ∈ span(basis)`.
    ///
    /// Because the basis elements have disjoint supports and unimodular
    /// entries, `x` lies in the span iff its restriction to each support is a
    /// phase multiple of that basis element (or zero) and `x` vanishes
    /// elsewhere.
    pub fn contains(&self, x: &PartialMonomial) -> bool {
        let mut covered = 0;
        for b in &self.basis {
            let mut ratio: Option<Phase> = None;
            let mut hits = 0;
            for (r, c, p) in b.support() {
                if let Some(q) = x.entry(r, c) {
                    let here = q.mul(p.inv());
                    if ratio.is_some_and(|prev| prev != here) {
                        return false;
                    }
                    ratio = Some(here);
                    hits += 1;
                }
            }
            if hits != 0 && hits != b.nnz() {
                return false;
            }
            covered += hits;
        }
        covered == x.nnz()
    }
}

/// `table[α][β] = Some(γ)` when `𝒜_α 𝒜_β ⊆ 𝒜_γ` with a nonzero product,
/// `None` when every product vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureTable {
    entries: Vec<Vec<Option<usize>>>,
}

impl ClosureTable {
    pub fn get(&self, alpha: usize, beta: usize) -> Option<usize> {
        self.entries[alpha][beta]
    }

    pub fn rows(&self) -> &[Vec<Option<usize>>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Number of pairs whose product is nonzero.
    pub fn nonzero_entries(&self) -> usize {
        self.entries
            .iter()
            .flatten()
            .filter(|e| e.is_some())
            .count()
    }
}

/// Counts recorded while certifying a grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradingCertificate {
    /// `Σ dim 𝒜_α`, equal to `N²`.
    pub dimension_sum: usize,
    /// Basis element pairs whose Hilbert-Schmidt product was certified.
    pub gram_pairs: usize,
    /// Piece pairs `(α, β)` whose products were located.
    pub closure_pairs: usize,
}

#[derive(Debug, Clone)]
pub struct Grading {
    descriptor: MadGroupDescriptor,
    n: usize,
    pieces: Vec<GradedPiece>,
    closure: ClosureTable,
    certificate: GradingCertificate,
}

impl Grading {
    pub fn descriptor(&self) -> &MadGroupDescriptor {
        &self.descriptor
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pieces(&self) -> &[GradedPiece] {
        &self.pieces
    }

    pub fn closure(&self) -> &ClosureTable {
        &self.closure
    }

    pub fn certificate(&self) -> GradingCertificate {
        self.certificate
    }

    /// Index of the piece with the given label.
    pub fn position(&self, label: &PieceLabel) -> Option<usize> {
        self.pieces.iter().position(|p| &p.label == label)
    }
}

fn pauli_pieces(q: u64) -> Vec<((u64, u64), PartialMonomial)> {
    (0..q)
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .map(|(a, b)| {
            let m = WhGroupElement::new(q, 0, a as i64, b as i64).to_matrix();
            ((a, b), PartialMonomial::from(&m))
        })
        .collect()
}

fn cartan_pieces(m: usize) -> Vec<(Option<CartanLabel>, Vec<PartialMonomial>)> {
    let diagonal = (m > 1).then_some(CartanLabel::Diagonal);
    let mut out = vec![(
        diagonal,
        (0..m).map(|i| PartialMonomial::unit(m, i, i)).collect(),
    )];
    for i in 0..m {
        for j in (0..m).filter(|&j| j != i) {
            out.push((
                Some(CartanLabel::Root(i, j)),
                vec![PartialMonomial::unit(m, i, j)],
            ));
        }
    }
    out
}

/// Builds the grading of `M_N(ℂ)` induced by `d` and certifies it exactly:
/// dimensions sum to `N²`, the union of the bases is linearly independent,
/// and the closure table is total.
///
/// Pauli factors are tensored in the order of [`MadGroupDescriptor::pauli_factors`],
/// followed by the `D(m)` factor; the first factor's label varies slowest.
pub fn build_grading(d: &MadGroupDescriptor, limits: &Limits) -> Result<Grading> {
    let n = d.n();
    limits.check_matrix_n(n)?;
    limits.check_subspaces(d.piece_count().try_into().unwrap_or(u64::MAX))?;
    let mut pieces = vec![GradedPiece {
        label: PieceLabel {
            pauli: Vec::new(),
            cartan: None,
        },
        basis: vec![PartialMonomial::unit(1, 0, 0)],
    }];
    for &q in d.pauli_factors() {
        let factor = pauli_pieces(q);
        pieces = pieces
            .iter()
            .flat_map(|acc| {
                factor.iter().map(move |(ab, m)| {
                    let mut label = acc.label.clone();
                    label.pauli.push(*ab);
                    GradedPiece {
                        label,
                        basis: vec![acc.basis[0].kron(m)],
                    }
                })
            })
            .collect();
    }
    let cartan = cartan_pieces(d.diagonal_size() as usize);
    let pieces: Vec<GradedPiece> = pieces
        .iter()
        .flat_map(|acc| {
            cartan.iter().map(move |(label, basis)| GradedPiece {
                label: PieceLabel {
                    pauli: acc.label.pauli.clone(),
                    cartan: *label,
                },
                basis: basis.iter().map(|b| acc.basis[0].kron(b)).collect(),
            })
        })
        .collect();

    let n = n as usize;
    let dimension_sum = pieces.iter().map(GradedPiece::dim).sum();
    if dimension_sum != n * n {
        return Err(Error::verification(
            "Σ dim 𝒜_α = N²",
            format!("dimension sum {dimension_sum}, expected {}", n * n),
        ));
    }
    let gram_pairs = certify_independence(&pieces)?;
    let mut grading = Grading {
        descriptor: d.clone(),
        n,
        pieces,
        closure: ClosureTable {
            entries: Vec::new(),
        },
        certificate: GradingCertificate {
            dimension_sum,
            gram_pairs,
            closure_pairs: 0,
        },
    };
    grading.closure = verify_grading_closure(&grading)?;
    grading.certificate.closure_pairs = grading.closure.size().pow(2);
    Ok(grading)
}

/// Certifies that the union of all bases is linearly independent by showing
/// its Hilbert-Schmidt Gram matrix is exactly diagonal with nonzero diagonal.
/// Only pairs sharing a matrix cell can have a nonzero product, so entries are
/// accumulated cell by cell. Within a piece, supports must be disjoint.
fn certify_independence(pieces: &[GradedPiece]) -> Result<usize> {
    let elements: Vec<(usize, &PartialMonomial)> = pieces
        .iter()
        .enumerate()
        .flat_map(|(i, p)| p.basis.iter().map(move |b| (i, b)))
        .collect();
    let mut cells: HashMap<(usize, usize), Vec<(usize, Phase)>> = HashMap::new();
    for (e, (_, b)) in elements.iter().enumerate() {
        if b.is_zero() {
            return Err(Error::verification(
                "linear independence",
                format!("basis element {e} is zero"),
            ));
        }
        for (r, c, p) in b.support() {
            cells.entry((r, c)).or_default().push((e, p));
        }
    }
    let mut off_diagonal: HashMap<(usize, usize), Vec<Phase>> = HashMap::new();
    for occupants in cells.values() {
        for &(a, pa) in occupants {
            for &(b, pb) in occupants {
                if a < b {
                    if elements[a].0 == elements[b].0 {
                        return Err(Error::verification(
                            "disjoint supports within a piece",
                            format!("basis elements {a} and {b} overlap"),
                        ));
                    }
                    off_diagonal
                        .entry((a, b))
                        .or_default()
                        .push(pa.mul(pb.inv()));
                }
            }
        }
    }
    let mut keys: Vec<_> = off_diagonal.keys().copied().collect();
    keys.sort_unstable();
    for key in keys {
        let g = sum_phases(off_diagonal.remove(&key).expect("present"))?;
        if !g.is_zero() {
            return Err(Error::verification(
                "linear independence",
                format!(
                    "basis elements {} and {} have Hilbert-Schmidt product {g}",
                    key.0, key.1
                ),
            ));
        }
    }
    Ok(elements.len() * elements.len())
}

/// Computes the closure table, checking every product of basis elements.
/// A product that lands in no piece, or pieces that send products to two
/// different pieces, raise [`Error::ClosureViolation`].
pub fn verify_grading_closure(g: &Grading) -> Result<ClosureTable> {
    let mut cover: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, piece) in g.pieces.iter().enumerate() {
        for b in &piece.basis {
            for (r, c, _) in b.support() {
                cover.entry((r, c)).or_default().push(i);
            }
        }
    }
    let locate = |x: &PartialMonomial| -> Option<usize> {
        let (r, c, _) = x.support().next()?;
        cover
            .get(&(r, c))?
            .iter()
            .copied()
            .find(|&i| g.pieces[i].contains(x))
    };
    let violation = |a: usize, b: usize, detail: String| Error::ClosureViolation {
        left: g.pieces[a].label.to_string(),
        right: g.pieces[b].label.to_string(),
        detail,
    };
    let mut entries = Vec::with_capacity(g.pieces.len());
    for (a, pa) in g.pieces.iter().enumerate() {
        let mut row = Vec::with_capacity(g.pieces.len());
        for (b, pb) in g.pieces.iter().enumerate() {
            let mut target: Option<usize> = None;
            for x in &pa.basis {
                for y in &pb.basis {
                    let xy = x.mul(y)?;
                    if xy.is_zero() {
                        continue;
                    }
                    if let Some(t) = target {
                        if !g.pieces[t].contains(&xy) {
                            return Err(violation(
                                a,
                                b,
                                format!("product leaves piece {}", g.pieces[t].label),
                            ));
                        }
                        continue;
                    }
                    match locate(&xy) {
                        Some(t) => target = Some(t),
                        None => {
                            return Err(violation(
                                a,
                                b,
                                format!(
                                    "product {:?} lies in no single piece",
                                    xy.exponent_rows(g.n as u64)
                                ),
                            ))
                        }
                    }
                }
            }
            row.push(target);
        }
        entries.push(row);
    }
    Ok(ClosureTable { entries })
}
