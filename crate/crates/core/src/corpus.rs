//! The bundled collection of small groups, extensions, subgroup triples and
//! action fixtures that the verification suites run over.

use crate::actions::{conjugation_mutual, Action, MutualActions};
use crate::error::{GroupError, Result};
use crate::fp::{FpGroup, Word};
use crate::group::{PermGroup, Subgroup};
use crate::hom::GroupHom;
use crate::homology::ActedModule;
use crate::named;
use crate::perm::Perm;
use crate::snf::AbelianInvariants;

/// Default corpus members, in canonical order.
pub const DEFAULT_GROUPS: [&str; 15] = [
    "C2", "C3", "C4", "C5", "C6", "C8", "C12", "V4", "C2xC4", "S3", "D4", "Q8", "A4", "D6", "C3xC3",
];

/// Extra members of order 16 for the slow multiplier run.
pub const SLOW_GROUPS: [&str; 4] = ["D8", "C4xC4", "C2xQ8", "C2xD4"];

/// Groups whose pairs with trivial actions are checked against the abelian
/// tensor product.
pub const ABELIAN_CONSISTENCY_GROUPS: [&str; 6] = ["C2", "C3", "C4", "C6", "V4", "C2xC4"];

/// Resolves names such as `C6`, `S3`, `A4`, `D4` (order 8), `Q8`, `V4` and
/// products `C2xC4`.
pub fn lookup(name: &str) -> Result<PermGroup> {
    let name = name.trim();
    if name.contains('x') {
        let mut parts = name.split('x');
        let first = lookup(parts.next().unwrap())?;
        return parts.try_fold(first, |acc, p| Ok(named::direct_product(&acc, &lookup(p)?)));
    }
    let bad = || GroupError::InvalidInput(format!("unknown group name {name:?}"));
    match name {
        "Q8" => return Ok(named::quaternion()),
        "V4" => return Ok(named::klein_four()),
        "1" => return Ok(PermGroup::trivial(1)),
        _ => {}
    }
    let (kind, digits) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
    let n: usize = digits.parse().map_err(|_| bad())?;
    match kind {
        "C" if (1..=64).contains(&n) => Ok(named::cyclic(n)),
        "S" if (1..=7).contains(&n) => Ok(named::symmetric(n)),
        "A" if (1..=7).contains(&n) => Ok(named::alternating(n)),
        "D" if (3..=32).contains(&n) => Ok(named::dihedral(n)),
        _ => Err(bad()),
    }
}

#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: PermGroup,
}

/// `1 → N → G → H → 1` with `N` central, `H` realized as `G/N`.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub name: String,
    pub group: PermGroup,
    pub kernel: Subgroup,
    pub quotient: PermGroup,
    pub projection: GroupHom,
}

impl CentralExtension {
    pub fn new(name: &str, group: PermGroup, kernel: Subgroup) -> Result<Self> {
        if !kernel.is_central() {
            let t = group.elements()?;
            let z = kernel
                .generators()
                .iter()
                .find(|&&z| t.generators().iter().any(|&s| t.mul(z, s) != t.mul(s, z)))
                .copied()
                .unwrap_or(0);
            return Err(GroupError::NotCentral {
                witness: t.perm(z as usize).to_string(),
            });
        }
        let (quotient, projection) = group.quotient(&kernel)?;
        Ok(CentralExtension {
            name: name.into(),
            group,
            kernel,
            quotient,
            projection,
        })
    }
}

/// Two normal subgroups of a common group.
#[derive(Clone, Debug)]
pub struct NormalTriple {
    pub name: String,
    pub ambient: PermGroup,
    pub g: Subgroup,
    pub h: Subgroup,
}

/// Mutual actions together with whether they ought to be compatible.
#[derive(Clone, Debug)]
pub struct ActionFixture {
    pub name: String,
    pub actions: MutualActions,
    pub expect_compatible: bool,
}

/// A group with a normal subgroup, both acting on each other by conjugation.
#[derive(Clone, Debug)]
pub struct NormalPair {
    pub name: String,
    pub group: PermGroup,
    pub normal: Subgroup,
}

impl NormalPair {
    pub fn actions(&self) -> Result<MutualActions> {
        conjugation_mutual(&self.group, &self.group.whole()?, &self.normal)
    }
}

/// A presentation with its expected order (`None` when enumeration must run
/// out of room) and, optionally, a permutation model to compare against.
#[derive(Clone, Debug)]
pub struct PresentationFixture {
    pub name: String,
    pub presentation: FpGroup,
    pub expected_order: Option<usize>,
    pub model: Option<PermGroup>,
}

#[derive(Clone, Debug)]
pub struct ModuleFixture {
    pub name: String,
    pub module: ActedModule,
    /// Expected `A ⊗_{ℤH} I(H)`.
    pub expected: AbelianInvariants,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub groups: Vec<NamedGroup>,
    pub extensions: Vec<CentralExtension>,
    pub triples: Vec<NormalTriple>,
    pub fixtures: Vec<ActionFixture>,
    pub presentations: Vec<PresentationFixture>,
    /// Compared pairwise, with trivial actions, against `G_ab ⊗ H_ab`.
    pub abelian_groups: Vec<NamedGroup>,
    pub modules: Vec<ModuleFixture>,
}

impl Corpus {
    pub fn empty() -> Self {
        Corpus::default()
    }

    pub fn standard() -> Result<Self> {
        Self::with_groups(&DEFAULT_GROUPS)
    }

    /// The standard extensions, triples and fixtures with the given groups.
    pub fn with_groups(names: &[&str]) -> Result<Self> {
        let groups = names
            .iter()
            .map(|&n| {
                Ok(NamedGroup {
                    name: n.into(),
                    group: lookup(n)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let abelian_groups = ABELIAN_CONSISTENCY_GROUPS
            .iter()
            .map(|&n| {
                Ok(NamedGroup {
                    name: n.into(),
                    group: lookup(n)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Corpus {
            groups,
            extensions: standard_extensions()?,
            triples: standard_triples()?,
            fixtures: standard_fixtures()?,
            presentations: standard_presentations()?,
            abelian_groups,
            modules: standard_modules()?,
        })
    }

    /// Adds a fixture claiming compatibility for conjugation on `S3` whose
    /// back-action has been replaced by the trivial one.
    pub fn with_corrupted_fixture(mut self) -> Result<Self> {
        let s3 = named::symmetric(3);
        let actions = MutualActions::new_unchecked(Action::conjugation(&s3)?, Action::trivial(&s3, &s3)?)?;
        self.fixtures.push(ActionFixture {
            name: "S3 conjugation (corrupted)".into(),
            actions,
            expect_compatible: true,
        });
        Ok(self)
    }

    /// Every `(G, N)` with `N` normal in a corpus group `G` of order at most
    /// `max_order`.
    pub fn normal_pairs(&self, max_order: usize) -> Result<Vec<NormalPair>> {
        let mut out = Vec::new();
        for ng in &self.groups {
            if ng.group.order()? > max_order {
                continue;
            }
            for n in ng.group.normal_subgroups()? {
                out.push(NormalPair {
                    name: format!("{} > {}", ng.name, describe_subgroup(&n)),
                    group: ng.group.clone(),
                    normal: n,
                });
            }
        }
        Ok(out)
    }

    pub fn group(&self, name: &str) -> Option<&PermGroup> {
        self.groups.iter().find(|g| g.name == name).map(|g| &g.group)
    }
}

/// `<(0 1), (2 3)>` style label from the subgroup's generators.
pub fn describe_subgroup(s: &Subgroup) -> String {
    let t = s.ambient().elements().expect("ambient is enumerated");
    let gens: Vec<String> = s.generators().iter().map(|&g| t.perm(g as usize).to_string()).collect();
    if gens.is_empty() {
        return "1".into();
    }
    format!("<{}>", gens.join(", "))
}

fn element(g: &PermGroup, cycles: &[Vec<usize>]) -> Result<usize> {
    let p = Perm::from_cycles(g.degree(), cycles)?;
    g.elements()?
        .index_of(&p)
        .ok_or_else(|| GroupError::InvalidInput(format!("{p} is not in the group")))
}

fn standard_extensions() -> Result<Vec<CentralExtension>> {
    let q8 = named::quaternion();
    let d4 = named::dihedral(4);
    let c3s3 = named::direct_product(&named::cyclic(3), &named::symmetric(3));
    let c3 = c3s3.subgroup_generated(&[element(&c3s3, &[vec![0, 1, 2]])?])?;
    let s3 = named::symmetric(3);
    Ok(vec![
        CentralExtension::new("Z(Q8) -> Q8 -> V4", q8.clone(), q8.center()?)?,
        CentralExtension::new("Z(D4) -> D4 -> V4", d4.clone(), d4.center()?)?,
        CentralExtension::new("C3 -> C3xS3 -> S3", c3s3, c3)?,
        CentralExtension::new("1 -> S3 -> S3", s3.clone(), s3.trivial_subgroup()?)?,
    ])
}

fn standard_triples() -> Result<Vec<NormalTriple>> {
    let d4 = named::dihedral(4);
    let rotations = d4.subgroup_generated(&[element(&d4, &[vec![0, 1, 2, 3]])?])?;
    let c6 = named::cyclic(6);
    let c6_order2 = c6.subgroup_generated(&[element(&c6, &[vec![0, 3], vec![1, 4], vec![2, 5]])?])?;
    let c6_order3 = c6.subgroup_generated(&[element(&c6, &[vec![0, 2, 4], vec![1, 3, 5]])?])?;
    let s3 = named::symmetric(3);
    let a3 = s3.subgroup_generated(&[element(&s3, &[vec![0, 1, 2]])?])?;
    let q8 = named::quaternion();
    let q8_i = q8.subgroup_generated(&[q8.elements()?.index_of(&q8.generators()[0]).unwrap()])?;
    let q8_j = q8.subgroup_generated(&[q8.elements()?.index_of(&q8.generators()[1]).unwrap()])?;
    let a4 = named::alternating(4);
    let v4 = a4.normal_subgroups()?.into_iter().find(|n| n.order() == 4).unwrap();
    let d6 = named::dihedral(6);
    let d6_normals = d6.normal_subgroups()?;
    let d6_six: Vec<Subgroup> = d6_normals.into_iter().filter(|n| n.order() == 6).collect();
    let triple = |name: &str, k: &PermGroup, g: Subgroup, h: Subgroup| NormalTriple {
        name: name.into(),
        ambient: k.clone(),
        g,
        h,
    };
    let mut out = vec![
        triple("D4; rotations, Z(D4)", &d4, rotations, d4.center()?),
        triple("S3; S3, S3", &s3, s3.whole()?, s3.whole()?),
        triple("C6; C2, C3", &c6, c6_order2, c6_order3),
        triple("S3; A3, S3", &s3, a3, s3.whole()?),
        triple("Q8; <i>, <j>", &q8, q8_i, q8_j),
        triple("A4; V4, A4", &a4, v4, a4.whole()?),
    ];
    for (k, a) in d6_six.iter().enumerate() {
        for b in &d6_six[k + 1..] {
            out.push(triple(
                &format!("D6; {}, {}", describe_subgroup(a), describe_subgroup(b)),
                &d6,
                a.clone(),
                b.clone(),
            ));
        }
    }
    Ok(out)
}

/// `C2` acting on `Cn` by inversion, `Cn` acting trivially back.
pub fn inversion_pair(n: usize) -> Result<MutualActions> {
    let c2 = named::cyclic(2);
    let cn = named::cyclic(n);
    let inv = cn.generators()[0].inverse();
    let act = Action::from_generator_automorphisms(&c2, &cn, &[vec![inv]])?;
    MutualActions::new(act, Action::trivial(&cn, &c2)?)
}

fn standard_fixtures() -> Result<Vec<ActionFixture>> {
    let mut out = Vec::new();
    for n in [3, 4, 5, 6, 8] {
        out.push(ActionFixture {
            name: format!("C2 inverting C{n}"),
            actions: inversion_pair(n)?,
            expect_compatible: true,
        });
    }
    let s3 = named::symmetric(3);
    out.push(ActionFixture {
        name: "S3 conjugating S3, trivial back".into(),
        actions: MutualActions::new(Action::conjugation(&s3)?, Action::trivial(&s3, &s3)?)?,
        expect_compatible: false,
    });
    let v4 = named::klein_four();
    let c3 = named::cyclic(3);
    out.push(ActionFixture {
        name: "V4, C3 trivial".into(),
        actions: MutualActions::trivial(&v4, &c3)?,
        expect_compatible: true,
    });
    Ok(out)
}

/// Relator from `(generator, power)` runs.
fn relator(runs: &[(usize, i64)]) -> Word {
    runs.iter()
        .fold(Word::empty(), |w, &(g, k)| w.mul(&Word::power_of(g, k)))
}

fn presentation(names: &[&str], relators: &[&[(usize, i64)]]) -> Result<FpGroup> {
    FpGroup::new(
        names.iter().map(|s| s.to_string()).collect(),
        relators.iter().map(|r| relator(r)).collect(),
    )
}

fn standard_presentations() -> Result<Vec<PresentationFixture>> {
    let fixture = |name: &str, p: FpGroup, order: Option<usize>, model: Option<PermGroup>| PresentationFixture {
        name: name.into(),
        presentation: p,
        expected_order: order,
        model,
    };
    Ok(vec![
        fixture("<a | a^5>", presentation(&["a"], &[&[(0, 5)]])?, Some(5), Some(named::cyclic(5))),
        fixture(
            "<a,b | a^2, b^3, (a*b)^2>",
            presentation(&["a", "b"], &[&[(0, 2)], &[(1, 3)], &[(0, 1), (1, 1), (0, 1), (1, 1)]])?,
            Some(6),
            Some(named::symmetric(3)),
        ),
        fixture(
            "<a,b | a^4, b^2, b*a*b*a>",
            presentation(&["a", "b"], &[&[(0, 4)], &[(1, 2)], &[(1, 1), (0, 1), (1, 1), (0, 1)]])?,
            Some(8),
            Some(named::dihedral(4)),
        ),
        fixture(
            "<a,b | a^4, a^2*b^-2, b^-1*a*b*a>",
            presentation(
                &["a", "b"],
                &[&[(0, 4)], &[(0, 2), (1, -2)], &[(1, -1), (0, 1), (1, 1), (0, 1)]],
            )?,
            Some(8),
            Some(named::quaternion()),
        ),
        fixture(
            "<a,b | a^2, b^3, (a*b)^3>",
            presentation(
                &["a", "b"],
                &[&[(0, 2)], &[(1, 3)], &[(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)]],
            )?,
            Some(12),
            Some(named::alternating(4)),
        ),
        fixture(
            "<a,b | a^2, b^2>",
            presentation(&["a", "b"], &[&[(0, 2)], &[(1, 2)]])?,
            None,
            None,
        ),
    ])
}

fn standard_modules() -> Result<Vec<ModuleFixture>> {
    let inv = AbelianInvariants::from_cyclic_orders;
    let c2 = named::cyclic(2);
    Ok(vec![
        ModuleFixture {
            name: "Z under negation, over C2".into(),
            module: ActedModule::new(inv(&[], 1), &c2, &[vec![vec![-1]]])?,
            expected: inv(&[], 1),
        },
        ModuleFixture {
            name: "Z trivial, over C3".into(),
            module: ActedModule::trivial(inv(&[], 1), &named::cyclic(3))?,
            expected: inv(&[3], 0),
        },
        ModuleFixture {
            name: "C2 trivial, over C2".into(),
            module: ActedModule::trivial(inv(&[2], 0), &c2)?,
            expected: inv(&[2], 0),
        },
        ModuleFixture {
            name: "Z^2 trivial, over S3".into(),
            module: ActedModule::trivial(inv(&[], 2), &named::symmetric(3))?,
            expected: inv(&[2, 2], 0),
        },
    ])
}
