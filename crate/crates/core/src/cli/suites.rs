use std::cell::OnceCell;
use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::Serialize;

use super::report::{SuiteBuilder, SuiteSection};
use crate::error::{Error, Result};
use crate::factorizations::{
    chain_to_factorisation, chapoton_identity, concatenation_fibers, enumerate_fact, enumerate_red,
    fact_counts, factorisation_to_chain, red_count_formula, CompositionType, CountLedger, Factorisation,
};
use crate::groups::Elem;
use crate::hurwitz::{
    check_braid_relations, classify_primitive_orbits, conjugacy_on_lattice, hurwitz_orbit, orbit_decomposition,
    p2_orbit_formula, strand_reachable, strong_conjugacy_classes,
};
use crate::ncp::{fuss_catalan, NcpLattice};
use crate::parabolic::{check_parabolic_coxeter_elements, length2_strata, reference_row, submax_formula, table_a1_verify};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Suite {
    Ncp,
    Counts,
    Chapoton,
    Hurwitz,
    Strata,
    #[value(name = "table-a1")]
    TableA1,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 6] = [
        Suite::Ncp,
        Suite::Counts,
        Suite::Chapoton,
        Suite::Hurwitz,
        Suite::Strata,
        Suite::TableA1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ncp => "ncp",
            Suite::Counts => "counts",
            Suite::Chapoton => "chapoton",
            Suite::Hurwitz => "hurwitz",
            Suite::Strata => "strata",
            Suite::TableA1 => "table-a1",
            Suite::All => "all",
        }
    }
}

/// Strand tracking runs only when `|Red(c)|` is at most this.
const STRAND_LIMIT: usize = 100_000;

/// Shared per-group data, computed on first use.
pub struct Ctx<'a, 'g> {
    pub lattice: &'a NcpLattice<'g>,
    pub n_max: usize,
    pub orbit_cap: usize,
    red: OnceCell<Result<Vec<Factorisation>>>,
    ledger: OnceCell<Result<CountLedger>>,
}

impl<'a, 'g> Ctx<'a, 'g> {
    pub fn new(lattice: &'a NcpLattice<'g>, n_max: usize, orbit_cap: usize) -> Self {
        Ctx {
            lattice,
            n_max,
            orbit_cap,
            red: OnceCell::new(),
            ledger: OnceCell::new(),
        }
    }

    fn red(&self) -> &Result<Vec<Factorisation>> {
        self.red.get_or_init(|| enumerate_red(self.lattice))
    }

    fn ledger(&self) -> &Result<CountLedger> {
        self.ledger.get_or_init(|| fact_counts(self.lattice))
    }

    fn rank(&self) -> usize {
        self.lattice.group().rank()
    }
}

fn is_resource(e: &Error) -> bool {
    matches!(e, Error::OrderCapExceeded { .. } | Error::OrbitCapExceeded { .. })
}

/// Runs one suite. Only resource-cap errors escape; everything else is
/// recorded as a failed check.
pub fn run_suite(ctx: &Ctx<'_, '_>, suite: Suite) -> Result<SuiteSection> {
    let spec = ctx.lattice.group().spec();
    let mut b = SuiteBuilder::new(spec, suite.name());
    let outcome = match suite {
        Suite::Ncp => ncp(ctx, &mut b),
        Suite::Counts => counts(ctx, &mut b),
        Suite::Chapoton => chapoton(ctx, &mut b),
        Suite::Hurwitz => hurwitz(ctx, &mut b),
        Suite::Strata => strata(ctx, &mut b),
        Suite::TableA1 => table(ctx, &mut b),
        Suite::All => unreachable!("expanded before dispatch"),
    };
    match outcome {
        Ok(()) => {}
        Err(e) if is_resource(&e) => return Err(e),
        Err(e) => b.push("error", "ok".into(), e.to_string(), false),
    }
    Ok(b.finish())
}

fn ncp(ctx: &Ctx<'_, '_>, b: &mut SuiteBuilder) -> Result<()> {
    let l = ctx.lattice;
    let g = l.group();
    b.eq("catalan", l.catalan_formula(), l.len() as u128);
    b.eq("coxeter-regular", true, g.coxeter_regularity_check());
    b.ok("partial-order", l.check_partial_order());
    b.ok("lattice-axioms", l.check_lattice_axioms());
    b.ok("brady-watt", l.check_brady_watt());
    b.ok("length-codim", l.check_length_codim());
    b.ok("kernel-decomposition", l.check_kernel_decomposition());
    let mut chains = BTreeMap::new();
    for n in 1..=ctx.n_max {
        let (dp, closed) = l.multichain_check(n);
        b.eq(format!("multichains/N={n}"), closed.to_string(), dp.to_string());
        chains.insert(n, dp);
    }
    let by_rank: Vec<usize> = (0..=g.rank()).map(|k| l.members_of_rank(k).len()).collect();
    b.detail("size", l.len());
    b.detail("reflections_dividing_c", l.members_of_rank(1).len());
    b.detail("reflections", g.reflections().len());
    b.detail("rank_sizes", by_rank);
    b.detail("multichains", chains);
    Ok(())
}

fn counts(ctx: &Ctx<'_, '_>, b: &mut SuiteBuilder) -> Result<()> {
    let l = ctx.lattice;
    let g = l.group();
    let n = ctx.rank();
    match ctx.red() {
        Ok(red) => b.eq("red", red_count_formula(g), red.len() as u128),
        Err(e) => b.push("red", red_count_formula(g).to_string(), e.to_string(), false),
    }
    let ledger = match ctx.ledger() {
        Ok(ledger) => ledger,
        Err(e) => {
            b.push("ledger", "agreement".into(), e.to_string(), false);
            return Ok(());
        }
    };
    for p in 1..=n {
        b.eq(format!("fact_{p}/difference"), ledger.delta[p - 1].to_string(), ledger.fact(p).to_string());
        b.eq(format!("fact_{p}/stirling"), ledger.stirling[p - 1].to_string(), ledger.fact(p).to_string());
    }
    b.eq("fact_1", 1, ledger.fact(1));
    b.ok("partition-invariance", ledger.check_partition_invariance());
    if n >= 2 {
        b.eq("submaximal-total", submax_formula(g).to_string(), ledger.fact(n - 1).to_string());
        let red = ctx.red().as_ref().map_err(Clone::clone)?;
        let fibers = concatenation_fibers(l, red)?;
        let bad = fibers.iter().find(|f| f.fiber_size != f.reflection_pairs);
        b.ok(
            "concatenation-fibers",
            bad.map_or(Ok(()), |f| {
                Err(format!("fiber over {} has {} elements, r = {}", f.image, f.fiber_size, f.reflection_pairs))
            }),
        );
    }
    let mut round_trip = Ok(());
    'outer: for p in 1..=n {
        for mu in CompositionType::all_with_parts(n, p) {
            for f in enumerate_fact(l, &mu) {
                let chain = factorisation_to_chain(l, &f);
                if chain_to_factorisation(l, &chain).as_ref() != Ok(&f) {
                    round_trip = Err(format!("{f} does not survive the chain round trip"));
                    break 'outer;
                }
            }
        }
    }
    b.ok("chain-round-trip", round_trip);
    b.detail("ledger", ledger);
    Ok(())
}

fn chapoton(ctx: &Ctx<'_, '_>, b: &mut SuiteBuilder) -> Result<()> {
    let l = ctx.lattice;
    let ledger = ctx.ledger().as_ref().map_err(Clone::clone)?;
    let mut records = Vec::new();
    for n in 1..=ctx.n_max {
        let rec = chapoton_identity(l, ledger, n);
        b.eq(format!("N={n}"), rec.rhs.to_string(), rec.lhs.to_string());
        b.eq(format!("N={n}/multichains"), rec.rhs.to_string(), rec.multichains.to_string());
        records.push(rec);
    }
    b.detail("records", records);
    Ok(())
}

#[derive(Serialize)]
struct OrbitLine {
    size: usize,
    class_id: usize,
}

fn hurwitz(ctx: &Ctx<'_, '_>, b: &mut SuiteBuilder) -> Result<()> {
    let l = ctx.lattice;
    let g = l.group();
    let n = ctx.rank();
    let red = ctx.red().as_ref().map_err(Clone::clone)?;
    let orbit = hurwitz_orbit(g, &red[0], ctx.orbit_cap)?;
    b.eq("red-transitive", red.len(), orbit.len());

    let mut braid = Ok(());
    for t in red {
        if let Err(e) = check_braid_relations(g, t.factors()) {
            braid = Err(e);
            break;
        }
    }
    b.ok("braid-relations", braid);

    let mut primitive = BTreeMap::new();
    for k in 2..=n {
        match classify_primitive_orbits(l, k, ctx.orbit_cap) {
            Ok(cls) => {
                b.eq(format!("primitive/k={k}"), cls.classes.len(), cls.orbits.len());
                let lines: Vec<OrbitLine> = cls
                    .orbits
                    .iter()
                    .map(|o| OrbitLine {
                        size: o.size,
                        class_id: o.class_id,
                    })
                    .collect();
                primitive.insert(k, lines);
            }
            Err(e) if is_resource(&e) => return Err(e),
            Err(e) => b.push(format!("primitive/k={k}"), "bijection".into(), e.to_string(), false),
        }
    }

    if n >= 2 {
        let c = l.coxeter();
        let two_block: Vec<Factorisation> = CompositionType::all_with_parts(n, 2)
            .iter()
            .flat_map(|mu| enumerate_fact(l, mu))
            .collect();
        let mut formula = Ok(());
        for orbit in orbit_decomposition(g, &two_block, ctx.orbit_cap)? {
            let (u1, u2) = (orbit.seed.factors()[0], orbit.seed.factors()[1]);
            if orbit.members != p2_orbit_formula(g, c, u1, u2) {
                formula = Err(format!("orbit of {} differs from the rotation formula", orbit.seed));
                break;
            }
        }
        b.ok("p2-orbit-formula", formula);
    }

    let expected = conjugacy_on_lattice(l);
    let strong = strong_conjugacy_classes(l, false);
    let by_reflections = strong_conjugacy_classes(l, true);
    b.eq("strong-conjugacy", expected.len(), strong.len());
    b.eq("strong-conjugacy/partition", true, strong == expected);
    b.eq("strong-conjugacy/reflection-conjugators", true, by_reflections == expected);

    if red.len() <= STRAND_LIMIT {
        let mut strand = Ok(());
        let atoms = l.members_of_rank(1);
        let mut done = std::collections::BTreeSet::new();
        for &r in atoms {
            if !done.insert(g.class_id(r)) {
                continue;
            }
            let reached = strand_reachable(g, red, r, ctx.orbit_cap)?;
            let class: Vec<Elem> = atoms.iter().copied().filter(|&x| g.class_id(x) == g.class_id(r)).collect();
            if reached != class {
                strand = Err(format!("strand tracking from {r} reaches {reached:?}, class is {class:?}"));
                break;
            }
        }
        b.ok("strand-tracking", strand);
    }
    b.detail("primitive_orbits", primitive);
    b.detail("strong_classes", strong.len());
    Ok(())
}

fn strata(ctx: &Ctx<'_, '_>, b: &mut SuiteBuilder) -> Result<()> {
    let l = ctx.lattice;
    let g = l.group();
    if ctx.rank() < 2 {
        b.detail("note", "rank 1: no length-2 strata");
        return Ok(());
    }
    let strata = length2_strata(l)?;
    if let Some(row) = reference_row(&g.spec()) {
        b.eq("stratum-count", row.pairs.len(), strata.len());
    }
    for s in &strata {
        b.eq(format!("class-{}/r=order", s.class_id), s.order as usize, s.r);
        b.eq(format!("class-{}/ll-number", s.class_id), s.r as u64, s.ll_number.unwrap_or(0));
    }
    let total: u128 = strata.iter().map(|s| s.count).sum();
    b.eq("submaximal-total", submax_formula(g).to_string(), total.to_string());
    match classify_primitive_orbits(l, 2, ctx.orbit_cap) {
        Ok(cls) => {
            let mut by_class: BTreeMap<usize, u128> = BTreeMap::new();
            for o in &cls.orbits {
                *by_class.entry(o.class_id).or_default() += o.size as u128;
            }
            let from_strata: BTreeMap<usize, u128> = strata.iter().map(|s| (s.class_id, s.count)).collect();
            b.eq("hurwitz-labelling", true, by_class == from_strata);
        }
        Err(e) if is_resource(&e) => return Err(e),
        Err(e) => b.push("hurwitz-labelling", "ok".into(), e.to_string(), false),
    }
    b.ok("parabolic-coxeter", check_parabolic_coxeter_elements(l));
    b.detail("strata", &strata);
    Ok(())
}

fn table(ctx: &Ctx<'_, '_>, b: &mut SuiteBuilder) -> Result<()> {
    let l = ctx.lattice;
    let g = l.group();
    if ctx.rank() < 2 {
        b.detail("note", "rank 1: no table row");
        return Ok(());
    }
    let red = ctx.red().as_ref().map_err(Clone::clone)?;
    let rep = table_a1_verify(l, red.len() as u128);
    match rep {
        Ok(rep) => {
            b.eq("pairs", format!("{:?}", rep.reference), format!("{:?}", rep.computed.pairs));
            b.eq("scalar", rep.reference_scalar.clone(), rep.scalar.clone());
            let n = g.rank() as u64;
            b.eq("degree-identity", n * (n - 1) * g.coxeter_number() as u64, rep.computed.degree());
            b.eq("fiber-identity", rep.red_count, rep.fiber_sum);
            b.detail("report", rep);
        }
        Err(e) => b.push("row", "match".into(), e.to_string(), false),
    }
    Ok(())
}

/// Catalan value, for error messages when the lattice cannot be built.
pub fn catalan_of(degrees: &[u32]) -> String {
    fuss_catalan(degrees, 1).to_string()
}
