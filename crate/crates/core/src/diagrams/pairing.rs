use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::Serialize;

use super::object::{ObjWord, Orientation};
use crate::error::{Error, Result};

/// Which boundary word an endpoint lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    Dom,
    Cod,
}

/// A boundary point, 1-based within its word. Ordered domain-first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub side: Side,
    pub index: usize,
}

impl Endpoint {
    pub const fn dom(index: usize) -> Self {
        Endpoint {
            side: Side::Dom,
            index,
        }
    }

    pub const fn cod(index: usize) -> Self {
        Endpoint {
            side: Side::Cod,
            index,
        }
    }

    /// Orientation of this point under the given boundary, if in range.
    pub fn orientation(&self, dom: &ObjWord, cod: &ObjWord) -> Option<Orientation> {
        match self.side {
            Side::Dom => dom.at(self.index),
            Side::Cod => cod.at(self.index),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.side {
            Side::Dom => 'd',
            Side::Cod => 'c',
        };
        write!(f, "{c}{}", self.index)
    }
}

/// Parses `dN` / `cN`. Index range is not checked here.
impl FromStr for Endpoint {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut chars = s.chars();
        let side = match chars.next() {
            Some('d') => Side::Dom,
            Some('c') => Side::Cod,
            _ => return Err(format!("endpoint {s:?} must start with 'd' or 'c'")),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("endpoint {s:?} needs a decimal index"));
        }
        let index = digits
            .parse()
            .map_err(|_| format!("endpoint {s:?} index is too large"))?;
        Ok(Endpoint { side, index })
    }
}

/// An unordered pair of distinct endpoints. Stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Strand {
    lo: Endpoint,
    hi: Endpoint,
}

impl Strand {
    /// `None` when both endpoints coincide.
    pub fn new(a: Endpoint, b: Endpoint) -> Option<Self> {
        match a.cmp(&b) {
            Ordering::Less => Some(Strand { lo: a, hi: b }),
            Ordering::Greater => Some(Strand { lo: b, hi: a }),
            Ordering::Equal => None,
        }
    }

    pub(crate) fn of(a: Endpoint, b: Endpoint) -> Self {
        Strand::new(a, b).expect("strand endpoints must differ")
    }

    pub fn endpoints(&self) -> (Endpoint, Endpoint) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, e: Endpoint) -> bool {
        self.lo == e || self.hi == e
    }

    /// The other end of the strand, if `e` is one of its ends.
    pub fn partner(&self, e: Endpoint) -> Option<Endpoint> {
        if self.lo == e {
            Some(self.hi)
        } else if self.hi == e {
            Some(self.lo)
        } else {
            None
        }
    }

    pub fn kind(&self) -> StrandKind {
        match (self.lo.side, self.hi.side) {
            (Side::Dom, Side::Dom) => StrandKind::DomainCap,
            (Side::Cod, Side::Cod) => StrandKind::CodomainCup,
            _ => StrandKind::External,
        }
    }

    /// Sign compatibility in direct domain/codomain coordinates: a strand joining two
    /// points on the same side needs opposite orientations, a through-strand equal ones.
    /// `None` when an endpoint is out of range.
    pub fn is_sign_compatible(&self, dom: &ObjWord, cod: &ObjWord) -> Option<bool> {
        let a = self.lo.orientation(dom, cod)?;
        let b = self.hi.orientation(dom, cod)?;
        Some(if self.lo.side == self.hi.side {
            a != b
        } else {
            a == b
        })
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrandKind {
    External,
    DomainCap,
    CodomainCup,
}

/// A listing of strands. Equality and hashing treat it as a set.
#[derive(Clone, Debug, Default)]
pub struct Pairing {
    strands: Vec<Strand>,
}

impl Pairing {
    pub fn new(strands: Vec<Strand>) -> Self {
        Pairing { strands }
    }

    pub fn empty() -> Self {
        Pairing::default()
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn len(&self) -> usize {
        self.strands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strands.is_empty()
    }

    pub fn is_sorted(&self) -> bool {
        self.strands.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn sorted(&self) -> Pairing {
        let mut strands = self.strands.clone();
        strands.sort_unstable();
        Pairing { strands }
    }

    /// Strand containing the endpoint, if any.
    pub fn strand_at(&self, e: Endpoint) -> Option<&Strand> {
        self.strands.iter().find(|s| s.contains(e))
    }

    fn with_sorted<R>(&self, f: impl FnOnce(&[Strand]) -> R) -> R {
        if self.is_sorted() {
            f(&self.strands)
        } else {
            f(&self.sorted().strands)
        }
    }
}

impl PartialEq for Pairing {
    fn eq(&self, other: &Self) -> bool {
        if self.strands == other.strands {
            return true;
        }
        self.len() == other.len() && self.with_sorted(|a| other.with_sorted(|b| a == b))
    }
}

impl Eq for Pairing {}

impl Hash for Pairing {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.with_sorted(|s| s.hash(state))
    }
}

impl FromIterator<Strand> for Pairing {
    fn from_iter<T: IntoIterator<Item = Strand>>(iter: T) -> Self {
        Pairing::new(iter.into_iter().collect())
    }
}

/// One reason a pairing fails validation. Strand numbers are 0-based positions in the listing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IndexOutOfRange {
        strand: usize,
        endpoint: Endpoint,
    },
    SignMismatch {
        strand: usize,
        strand_value: Strand,
    },
    Overlap {
        endpoint: Endpoint,
        first: usize,
        second: usize,
    },
    Uncovered {
        endpoint: Endpoint,
    },
    NotMaximal {
        candidate: Strand,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IndexOutOfRange { strand, endpoint } => {
                write!(f, "strand #{strand}: endpoint {endpoint} out of range")
            }
            Violation::SignMismatch {
                strand,
                strand_value,
            } => write!(
                f,
                "strand #{strand} ({strand_value}) is not sign-compatible"
            ),
            Violation::Overlap {
                endpoint,
                first,
                second,
            } => write!(
                f,
                "strands #{first} and #{second} share endpoint {endpoint}"
            ),
            Violation::Uncovered { endpoint } => write!(f, "endpoint {endpoint} is unmatched"),
            Violation::NotMaximal { candidate } => {
                write!(f, "not maximal: {candidate} could still be added")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn all_endpoints(dom: &ObjWord, cod: &ObjWord) -> impl Iterator<Item = Endpoint> {
    (1..=dom.len())
        .map(Endpoint::dom)
        .chain((1..=cod.len()).map(Endpoint::cod))
}

/// Checks sign compatibility, disjointness and (optionally) totality. When `require_total`
/// is off, maximality is checked instead: no two unmatched points may form a valid strand.
pub fn validate_pairing(
    dom: &ObjWord,
    cod: &ObjWord,
    pairing: &Pairing,
    require_total: bool,
) -> ValidationReport {
    let mut violations = Vec::new();
    let mut owner: Vec<Option<usize>> = vec![None; dom.len() + cod.len()];
    let slot = |e: Endpoint| match e.side {
        Side::Dom => e.index - 1,
        Side::Cod => dom.len() + e.index - 1,
    };

    for (i, s) in pairing.strands().iter().enumerate() {
        let (a, b) = s.endpoints();
        let mut in_range = true;
        for e in [a, b] {
            if e.orientation(dom, cod).is_none() {
                violations.push(Violation::IndexOutOfRange {
                    strand: i,
                    endpoint: e,
                });
                in_range = false;
            }
        }
        if !in_range {
            continue;
        }
        if s.is_sign_compatible(dom, cod) == Some(false) {
            violations.push(Violation::SignMismatch {
                strand: i,
                strand_value: *s,
            });
        }
        for e in [a, b] {
            match owner[slot(e)] {
                Some(first) => violations.push(Violation::Overlap {
                    endpoint: e,
                    first,
                    second: i,
                }),
                None => owner[slot(e)] = Some(i),
            }
        }
    }

    let uncovered: Vec<Endpoint> = all_endpoints(dom, cod)
        .filter(|&e| owner[slot(e)].is_none())
        .collect();
    if require_total {
        violations.extend(
            uncovered
                .iter()
                .map(|&endpoint| Violation::Uncovered { endpoint }),
        );
    } else {
        for (i, &a) in uncovered.iter().enumerate() {
            for &b in &uncovered[i + 1..] {
                let candidate = Strand::of(a, b);
                if candidate.is_sign_compatible(dom, cod) == Some(true) {
                    violations.push(Violation::NotMaximal { candidate });
                }
            }
        }
    }
    ValidationReport { violations }
}

/// `(G_e, G_d, G_c)`: external strands, domain caps, codomain cups.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SectionCounts {
    pub external: usize,
    pub domain_caps: usize,
    pub codomain_cups: usize,
}

impl SectionCounts {
    pub fn of(pairing: &Pairing) -> Self {
        let mut counts = SectionCounts::default();
        for s in pairing.strands() {
            match s.kind() {
                StrandKind::External => counts.external += 1,
                StrandKind::DomainCap => counts.domain_caps += 1,
                StrandKind::CodomainCup => counts.codomain_cups += 1,
            }
        }
        counts
    }

    pub fn total(&self) -> usize {
        self.external + self.domain_caps + self.codomain_cups
    }
}

/// A morphism: a total sign-compatible pairing between two words plus a count of
/// closed circles. Equality compares strand sets, so listing order is irrelevant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagMorphism {
    dom: ObjWord,
    cod: ObjWord,
    pairing: Pairing,
    circles: u64,
}

impl DiagMorphism {
    pub fn new(dom: ObjWord, cod: ObjWord, pairing: Pairing, circles: u64) -> Result<Self> {
        let report = validate_pairing(&dom, &cod, &pairing, true);
        if !report.is_ok() {
            return Err(Error::InvalidPairing(report));
        }
        Ok(DiagMorphism {
            dom,
            cod,
            pairing,
            circles,
        })
    }

    /// Caller guarantees the pairing is total and sign-compatible.
    pub(crate) fn from_parts(dom: ObjWord, cod: ObjWord, pairing: Pairing, circles: u64) -> Self {
        debug_assert!(validate_pairing(&dom, &cod, &pairing, true).is_ok());
        DiagMorphism {
            dom,
            cod,
            pairing,
            circles,
        }
    }

    pub fn dom(&self) -> &ObjWord {
        &self.dom
    }

    pub fn cod(&self) -> &ObjWord {
        &self.cod
    }

    pub fn pairing(&self) -> &Pairing {
        &self.pairing
    }

    pub fn circles(&self) -> u64 {
        self.circles
    }

    pub fn with_circles(&self, circles: u64) -> Self {
        DiagMorphism {
            circles,
            ..self.clone()
        }
    }

    pub fn section_counts(&self) -> SectionCounts {
        SectionCounts::of(&self.pairing)
    }

    /// Same morphism with strands in ascending endpoint order.
    pub fn canonical_form(&self) -> Self {
        if self.pairing.is_sorted() {
            return self.clone();
        }
        DiagMorphism {
            pairing: self.pairing.sorted(),
            ..self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.pairing.is_sorted()
    }
}

impl fmt::Display for DiagMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\" -> \"{}\" {{", self.dom, self.cod)?;
        for (i, s) in self.canonical_form().pairing.strands().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}} circles={}", self.circles)
    }
}

pub fn classify_sections(m: &DiagMorphism) -> SectionCounts {
    m.section_counts()
}

pub fn canonical_form(m: &DiagMorphism) -> DiagMorphism {
    m.canonical_form()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ObjWord {
        s.parse().unwrap()
    }

    fn st(a: &str, b: &str) -> Strand {
        Strand::new(a.parse().unwrap(), b.parse().unwrap()).unwrap()
    }

    #[test]
    fn through_strand_needs_equal_orientations() {
        let p = Pairing::new(vec![st("d1", "c1")]);
        assert!(validate_pairing(&w("+"), &w("+"), &p, true).is_ok());
        let bad = validate_pairing(&w("+"), &w("-"), &p, true);
        assert_eq!(
            bad.violations,
            vec![Violation::SignMismatch {
                strand: 0,
                strand_value: st("d1", "c1")
            }]
        );
    }

    #[test]
    fn coverage_violation_lists_unmatched_points() {
        let p = Pairing::new(vec![st("d1", "d2")]);
        let report = validate_pairing(&w("+-"), &w("+-"), &p, true);
        assert_eq!(
            report.violations,
            vec![
                Violation::Uncovered {
                    endpoint: Endpoint::cod(1)
                },
                Violation::Uncovered {
                    endpoint: Endpoint::cod(2)
                },
            ]
        );
    }

    #[test]
    fn partial_pairings_are_checked_for_maximality() {
        let p = Pairing::new(vec![st("d1", "d2")]);
        let report = validate_pairing(&w("+-"), &w("+-"), &p, false);
        assert_eq!(
            report.violations,
            vec![Violation::NotMaximal {
                candidate: st("c1", "c2")
            }]
        );
        // (+) -> (-) has no valid strand at all, so the empty pairing is maximal.
        assert!(validate_pairing(&w("+"), &w("-"), &Pairing::empty(), false).is_ok());
    }

    #[test]
    fn reports_every_violation() {
        let p = Pairing::new(vec![st("d1", "c1"), st("d1", "c2"), st("d1", "c9")]);
        let report = validate_pairing(&w("+"), &w("-+"), &p, true);
        assert!(report.violations.contains(&Violation::IndexOutOfRange {
            strand: 2,
            endpoint: Endpoint::cod(9)
        }));
        assert!(report.violations.contains(&Violation::SignMismatch {
            strand: 0,
            strand_value: st("d1", "c1")
        }));
        assert!(report.violations.contains(&Violation::Overlap {
            endpoint: Endpoint::dom(1),
            first: 0,
            second: 1
        }));
    }

    #[test]
    fn degenerate_strand_is_rejected() {
        assert!(Strand::new(Endpoint::dom(1), Endpoint::dom(1)).is_none());
    }

    #[test]
    fn endpoint_parsing() {
        assert_eq!("d12".parse::<Endpoint>(), Ok(Endpoint::dom(12)));
        assert_eq!("c1".parse::<Endpoint>(), Ok(Endpoint::cod(1)));
        assert_eq!("d0".parse::<Endpoint>(), Ok(Endpoint::dom(0)));
        assert!("x1".parse::<Endpoint>().is_err());
        assert!("d".parse::<Endpoint>().is_err());
        assert!("d-1".parse::<Endpoint>().is_err());
    }

    #[test]
    fn section_classification() {
        let id = DiagMorphism::new(
            w("+-"),
            w("+-"),
            Pairing::new(vec![st("d1", "c1"), st("d2", "c2")]),
            0,
        )
        .unwrap();
        assert_eq!(
            classify_sections(&id),
            SectionCounts {
                external: 2,
                domain_caps: 0,
                codomain_cups: 0
            }
        );
        let cup = DiagMorphism::new(w(""), w("-+"), Pairing::new(vec![st("c1", "c2")]), 0).unwrap();
        assert_eq!(
            classify_sections(&cup),
            SectionCounts {
                external: 0,
                domain_caps: 0,
                codomain_cups: 1
            }
        );
        let cap = DiagMorphism::new(w("+-"), w(""), Pairing::new(vec![st("d1", "d2")]), 0).unwrap();
        assert_eq!(
            classify_sections(&cap),
            SectionCounts {
                external: 0,
                domain_caps: 1,
                codomain_cups: 0
            }
        );
    }

    #[test]
    fn canonical_form_is_set_semantics() {
        let a = DiagMorphism::new(
            w("+-"),
            w("+-"),
            Pairing::new(vec![st("d2", "c2"), st("c1", "d1")]),
            0,
        )
        .unwrap();
        let b = DiagMorphism::new(
            w("+-"),
            w("+-"),
            Pairing::new(vec![st("d1", "c1"), st("d2", "c2")]),
            0,
        )
        .unwrap();
        assert_eq!(a, b);
        assert!(!a.is_canonical());
        assert_eq!(
            a.canonical_form().pairing().strands(),
            b.pairing().strands()
        );
        assert_eq!(a.canonical_form().canonical_form(), a.canonical_form());
        assert_ne!(b, b.with_circles(1));
    }
}
