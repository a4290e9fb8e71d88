//! Quasi-split forms from outer Galois actions factoring through `(Z/m)^* / H`, and the
//! extended Weyl group `1 → W → Ω → Out → 1`.

use std::collections::{BTreeMap, HashSet};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::root_datum::{
    classify_cartan, dynkin_components, group_closure, out_group, weyl_group, BasedRootDatum, SimpleType,
};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Gal(E/Q)` for `E` inside `Q(ζ_m)`, presented as `(Z/m)^* / H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGaloisDescriptor {
    pub m: u64,
    /// Sorted residues.
    #[serde(rename = "H")]
    pub h: Vec<u64>,
}

impl AbelianGaloisDescriptor {
    pub fn new(m: u64, h: &[u64]) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("modulus must be positive".into()));
        }
        let mut h: Vec<u64> = h.iter().map(|x| x % m).collect();
        h.sort_unstable();
        h.dedup();
        if !h.contains(&(1 % m)) {
            return Err(Error::Invalid("H must contain 1".into()));
        }
        if let Some(x) = h.iter().find(|&&x| x.gcd(&m) != 1) {
            return Err(Error::Invalid(format!("residue {x} is not a unit mod {m}")));
        }
        let set: HashSet<u64> = h.iter().copied().collect();
        for &a in &h {
            for &b in &h {
                if !set.contains(&(a * b % m)) {
                    return Err(Error::Invalid("H is not closed under multiplication".into()));
                }
            }
        }
        Ok(AbelianGaloisDescriptor { m, h })
    }

    pub fn units(&self) -> Vec<u64> {
        (0..self.m.max(2)).filter(|x| x.gcd(&self.m) == 1).map(|x| x % self.m).collect::<Vec<_>>()
    }

    /// Smallest residue of the coset of `x` (which must be a unit).
    pub fn class_of(&self, x: u64) -> u64 {
        let x = x % self.m;
        self.h.iter().map(|h| h * x % self.m).min().expect("H is nonempty")
    }

    /// Coset representatives, sorted.
    pub fn classes(&self) -> Vec<u64> {
        let mut c: Vec<u64> = self.units().into_iter().map(|u| self.class_of(u)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.class_of(a * b % self.m)
    }
}

/// A homomorphism `(Z/m)^*/H → Out(b)`, stored on every class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterGaloisAction {
    pub based: BasedRootDatum,
    pub descriptor: AbelianGaloisDescriptor,
    pub images: BTreeMap<u64, IntMatrix>,
}

impl OuterGaloisAction {
    /// Extends the images of `generators` multiplicatively and verifies the result.
    pub fn new(
        based: BasedRootDatum,
        descriptor: AbelianGaloisDescriptor,
        generators: &[(u64, IntMatrix)],
    ) -> Result<Self> {
        let n = based.datum.rank;
        for (r, g) in generators {
            if r.gcd(&descriptor.m) != 1 {
                return Err(Error::Invalid(format!("residue {r} is not a unit mod {}", descriptor.m)));
            }
            if g.rows() != n || g.cols() != n || !based.preserves(g) {
                return Err(Error::NotHomomorphism(format!("image of {r} is not a based automorphism")));
            }
        }
        let gens: Vec<(u64, IntMatrix)> =
            generators.iter().map(|(r, g)| (descriptor.class_of(*r), g.clone())).collect();
        let mut images: BTreeMap<u64, IntMatrix> = BTreeMap::new();
        images.insert(descriptor.class_of(1), IntMatrix::identity(n));
        for (c, g) in &gens {
            if let Some(prev) = images.get(c) {
                if prev != g {
                    return Err(Error::NotHomomorphism(format!("conflicting images for class {c}")));
                }
            }
        }
        let mut frontier: Vec<u64> = vec![descriptor.class_of(1)];
        while let Some(c) = frontier.pop() {
            let gc = images[&c].clone();
            for (a, ga) in &gens {
                let target = descriptor.mul(c, *a);
                let img = gc.mul(ga);
                match images.get(&target) {
                    Some(existing) if *existing != img => {
                        return Err(Error::NotHomomorphism(format!("class {target} receives two images")));
                    }
                    Some(_) => {}
                    None => {
                        images.insert(target, img);
                        frontier.push(target);
                    }
                }
            }
        }
        let classes = descriptor.classes();
        if images.len() != classes.len() {
            return Err(Error::NotHomomorphism("generators do not generate the quotient".into()));
        }
        for &a in &classes {
            for &b in &classes {
                if images[&descriptor.mul(a, b)] != images[&a].mul(&images[&b]) {
                    return Err(Error::NotHomomorphism(format!("table fails at ({a}, {b})")));
                }
            }
        }
        Ok(OuterGaloisAction { based, descriptor, images })
    }

    pub fn trivial(based: BasedRootDatum, descriptor: AbelianGaloisDescriptor) -> Self {
        let n = based.datum.rank;
        let images = descriptor.classes().into_iter().map(|c| (c, IntMatrix::identity(n))).collect();
        OuterGaloisAction { based, descriptor, images }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Positions in Δ.
    pub nodes: Vec<usize>,
    #[serde(rename = "type")]
    pub ty: SimpleType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Indices into the component list.
    pub components: Vec<usize>,
    #[serde(rename = "type")]
    pub ty: SimpleType,
    pub size: usize,
    /// Order of the diagram automorphisms the stabilizer induces on the first component.
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisFormDescriptor {
    pub m: u64,
    #[serde(rename = "H")]
    pub h: Vec<u64>,
    pub components: Vec<Component>,
    pub orbits: Vec<Orbit>,
    /// Permutation of Δ induced by each class.
    pub permutations: BTreeMap<u64, Vec<usize>>,
}

impl GaloisFormDescriptor {
    fn descriptor(&self) -> AbelianGaloisDescriptor {
        AbelianGaloisDescriptor { m: self.m, h: self.h.clone() }
    }

    fn component_of(&self, node: usize) -> usize {
        self.components.iter().position(|c| c.nodes.contains(&node)).expect("node lies in a component")
    }

    /// Permutation of components induced by a permutation of Δ.
    fn on_components(&self, perm: &[usize]) -> Vec<usize> {
        self.components.iter().map(|c| self.component_of(perm[c.nodes[0]])).collect()
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // (p ∘ q)(i) = p(q(i))
    q.iter().map(|&i| p[i]).collect()
}

fn perm_order(p: &[usize]) -> usize {
    let id: Vec<usize> = (0..p.len()).collect();
    let mut cur = p.to_vec();
    let mut n = 1;
    while cur != id {
        cur = compose(p, &cur);
        n += 1;
    }
    n
}

fn components_of(b: &BasedRootDatum) -> Result<Vec<Component>> {
    let cartan = b.cartan_matrix();
    dynkin_components(&cartan)
        .into_iter()
        .map(|nodes| {
            let sub = IntMatrix::from_rows(
                &nodes.iter().map(|&i| nodes.iter().map(|&j| cartan[(i, j)].clone()).collect()).collect::<Vec<_>>(),
                nodes.len(),
            );
            Ok(Component { ty: classify_cartan(&sub)?, nodes })
        })
        .collect()
}

pub fn quasi_split_descriptor(a: &OuterGaloisAction) -> Result<GaloisFormDescriptor> {
    let components = components_of(&a.based)?;
    let mut permutations = BTreeMap::new();
    for (&c, g) in &a.images {
        let p = a
            .based
            .induced_permutation(g)
            .ok_or_else(|| Error::NotHomomorphism(format!("image of class {c} does not preserve Δ")))?;
        permutations.insert(c, p);
    }
    let mut desc = GaloisFormDescriptor {
        m: a.descriptor.m,
        h: a.descriptor.h.clone(),
        components,
        orbits: Vec::new(),
        permutations,
    };
    let comp_perms: Vec<(Vec<usize>, Vec<usize>)> =
        desc.permutations.values().map(|p| (p.clone(), desc.on_components(p))).collect();
    let mut seen = vec![false; desc.components.len()];
    for start in 0..desc.components.len() {
        if seen[start] {
            continue;
        }
        let mut orbit: Vec<usize> = comp_perms.iter().map(|(_, cp)| cp[start]).collect();
        orbit.push(start);
        orbit.sort_unstable();
        orbit.dedup();
        for &c in &orbit {
            seen[c] = true;
        }
        let rep = &desc.components[start];
        let mut induced: HashSet<Vec<usize>> = HashSet::new();
        for (p, cp) in &comp_perms {
            if cp[start] == start {
                induced.insert(rep.nodes.iter().map(|&n| p[n]).collect());
            }
        }
        desc.orbits.push(Orbit { components: orbit.clone(), ty: rep.ty, size: orbit.len(), d: induced.len() });
    }
    Ok(desc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalDatum {
    pub ell: u64,
    pub class: u64,
    /// Image of Frobenius as a permutation of Δ.
    pub permutation: Vec<usize>,
    pub order: usize,
}

fn check_unramified(desc: &AbelianGaloisDescriptor, ell: u64) -> Result<()> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if desc.m.is_multiple_of(ell) {
        return Err(Error::Ramified(ell));
    }
    Ok(())
}

pub fn restrict_descriptor(desc: &GaloisFormDescriptor, ell: u64) -> Result<LocalDatum> {
    let d = desc.descriptor();
    check_unramified(&d, ell)?;
    let class = d.class_of(ell);
    let permutation = desc.permutations[&class].clone();
    let order = perm_order(&permutation);
    Ok(LocalDatum { ell, class, permutation, order })
}

/// Frobenius at `ell` as an element of Out, with its order.
pub fn restrict_action(a: &OuterGaloisAction, ell: u64) -> Result<(LocalDatum, IntMatrix)> {
    check_unramified(&a.descriptor, ell)?;
    let class = a.descriptor.class_of(ell);
    let g = a.images[&class].clone();
    let permutation = a.based.induced_permutation(&g).expect("action preserves Δ");
    let order = perm_order(&permutation);
    Ok((LocalDatum { ell, class, permutation, order }, g))
}

/// Per Frobenius orbit of size f on components: `(component index, f, d)` where d is the
/// order of `Frob^f` on that component's diagram.
pub fn frobenius_orbits(desc: &GaloisFormDescriptor, ell: u64) -> Result<Vec<(usize, usize, usize)>> {
    let local = restrict_descriptor(desc, ell)?;
    let cp = desc.on_components(&local.permutation);
    let mut seen = vec![false; desc.components.len()];
    let mut out = Vec::new();
    for start in 0..desc.components.len() {
        if seen[start] {
            continue;
        }
        let mut f = 0;
        let mut c = start;
        loop {
            seen[c] = true;
            f += 1;
            c = cp[c];
            if c == start {
                break;
            }
        }
        let mut power: Vec<usize> = (0..local.permutation.len()).collect();
        for _ in 0..f {
            power = compose(&local.permutation, &power);
        }
        let nodes = &desc.components[start].nodes;
        let restricted: Vec<usize> =
            nodes.iter().map(|&n| nodes.iter().position(|&m| m == power[n]).expect("stabilized")).collect();
        out.push((start, f, perm_order(&restricted)));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaGroup {
    pub elements: Vec<IntMatrix>,
    pub weyl: Vec<IntMatrix>,
    /// Base-preserving automorphisms, a complement to W.
    pub section: Vec<IntMatrix>,
}

pub fn omega_group(b: &BasedRootDatum, cap: usize) -> Result<OmegaGroup> {
    let weyl = weyl_group(&b.datum, cap)?;
    let section = out_group(b)?;
    let mut gens: Vec<IntMatrix> = (0..b.datum.roots.len()).map(|i| b.datum.reflection_matrix(i)).collect();
    gens.extend(section.iter().cloned());
    gens.sort();
    gens.dedup();
    let elements = group_closure(&gens, b.datum.rank, cap)?;
    Ok(OmegaGroup { elements, weyl, section })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesReport {
    pub weyl_order: usize,
    pub out_order: usize,
    pub omega_order: usize,
    pub orders_multiply: bool,
    pub intersection_trivial: bool,
    pub product_is_omega: bool,
    pub section_is_subgroup: bool,
    pub weyl_is_normal: bool,
    pub section_preserves_base: bool,
}

impl SesReport {
    pub fn passed(&self) -> bool {
        self.orders_multiply
            && self.intersection_trivial
            && self.product_is_omega
            && self.section_is_subgroup
            && self.weyl_is_normal
            && self.section_preserves_base
    }
}

pub fn verify_ses(b: &BasedRootDatum, cap: usize) -> Result<SesReport> {
    let om = omega_group(b, cap)?;
    let w: HashSet<&IntMatrix> = om.weyl.iter().collect();
    let s: HashSet<&IntMatrix> = om.section.iter().collect();
    let omega: HashSet<&IntMatrix> = om.elements.iter().collect();
    let id = IntMatrix::identity(b.datum.rank);
    let intersection_trivial = om.section.iter().filter(|g| w.contains(g)).all(|g| *g == id);
    let mut product: HashSet<IntMatrix> = HashSet::new();
    for x in &om.weyl {
        for y in &om.section {
            product.insert(x.mul(y));
        }
    }
    let product_is_omega = product.len() == omega.len() && product.iter().all(|g| omega.contains(g));
    let section_is_subgroup = om.section.iter().all(|x| om.section.iter().all(|y| s.contains(&x.mul(y))));
    let inverse = |g: &IntMatrix| om.section.iter().find(|h| g.mul(h) == id).cloned();
    let weyl_is_normal = om.section.iter().all(|g| match inverse(g) {
        Some(gi) => om.weyl.iter().all(|x| w.contains(&g.mul(x).mul(&gi))),
        None => false,
    });
    let section_preserves_base = om.section.iter().all(|g| b.preserves(g));
    Ok(SesReport {
        weyl_order: om.weyl.len(),
        out_order: om.section.len(),
        omega_order: om.elements.len(),
        orders_multiply: om.elements.len() == om.weyl.len() * om.section.len(),
        intersection_trivial,
        product_is_omega,
        section_is_subgroup,
        weyl_is_normal,
        section_preserves_base,
    })
}
