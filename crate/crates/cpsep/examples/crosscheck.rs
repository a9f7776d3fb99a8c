use cpsep::enumerate::{self, EnumContext};
use cpsep::graph::{Graph, VertexSet};
use cpsep::nmwcu::{self, NmwcuInstance};
use cpsep::oracle::{self, OracleBudget};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn vs(v: &[usize]) -> VertexSet { VertexSet::new(v.to_vec()) }

fn main() {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let rounds: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = OracleBudget { max_n: 12, max_k: 4, subset_cap: 1 << 22 };
    let mut done_enum = 0u64;
    let mut done_nmwcu = 0u64;
    let mut max_nodes = 0u64;
    while done_enum < rounds as u64 {
        let n = rng.gen_range(4..=10);
        let p = [0.2, 0.3, 0.4, 0.55][rng.gen_range(0..4)];
        let mut edges = Vec::new();
        for u in 0..n { for v in (u+1)..n { if rng.gen_bool(p) { edges.push((u, v)); } } }
        let g = Graph::from_edges(n, &edges).unwrap();
        let s = 0; let t = n - 1;
        let mut rest: Vec<usize> = (1..n-1).collect();
        rest.shuffle(&mut rng);
        let a_len = rng.gen_range(0..=rest.len().min(3));
        let a: VertexSet = rest[..a_len].iter().copied().collect();
        let q_len = rng.gen_range(0..=(rest.len()-a_len).min(3));
        let q: VertexSet = rest[a_len..a_len+q_len].iter().copied().collect();
        let sa = a.with(s);
        let mut parts = Vec::new();
        let mut avail: Vec<usize> = sa.iter().collect();
        for _ in 0..rng.gen_range(0..=3usize) {
            if avail.is_empty() { break; }
            avail.shuffle(&mut rng);
            let take = rng.gen_range(1..=avail.len());
            parts.push(vs(&avail[..take]));
            avail.drain(..take);
        }
        let k = rng.gen_range(1..=4);
        let Ok(ctx) = EnumContext::new(g.clone(), s, t, a, q, parts, k) else { continue };
        let (got, stats) = match enumerate::gen_seps(&ctx) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("ERROR on edges {:?} a {:?} q {:?} parts {:?} k {}: {}",
                    g.edges(), ctx.a, ctx.q, ctx.parts, k, e);
                std::process::exit(1);
            }
        };
        max_nodes = max_nodes.max(stats.nodes_visited);
        let want = oracle::all_cp_important(&g, s, &ctx.a, t, &ctx.constraint(), k, &budget).unwrap();
        if got != want {
            eprintln!("MISMATCH edges {:?} a {:?} q {:?} parts {:?} k {}", g.edges(), ctx.a, ctx.q, ctx.parts, k);
            eprintln!("got {:?}\nwant {:?}", got, want);
            std::process::exit(1);
        }
        done_enum += 1;
    }
    // nmwcu stress: unit and small weights
    while done_nmwcu < (rounds / 2) as u64 {
        let n = rng.gen_range(4..=9);
        let p = [0.25, 0.35, 0.5][rng.gen_range(0..3)];
        let mut edges = Vec::new();
        for u in 0..n { for v in (u+1)..n { if rng.gen_bool(p) { edges.push((u, v)); } } }
        let mut g = Graph::from_edges(n, &edges).unwrap();
        if rng.gen_bool(0.5) {
            let w: Vec<u64> = (0..n).map(|_| rng.gen_range(8..=9)).collect();
            g = g.with_weights(w).unwrap();
        }
        let m = rng.gen_range(1..=3usize);
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(&mut rng);
        let mut parts = Vec::new();
        let mut used = 0;
        for _ in 0..m {
            let cap = 2usize.min(n - used);
            if cap == 0 { break; }
            let take = rng.gen_range(1..=cap);
            parts.push(vs(&ids[used..used+take]));
            used += take;
        }
        let k = rng.gen_range(0..=3);
        let inst = NmwcuInstance::new(g, parts, k).unwrap();
        let got = nmwcu::solve(&inst).unwrap();
        let want = oracle::brute_nmwcu(&inst, &budget).unwrap();
        if got.feasible != want.feasible || (got.feasible && got.total_weight != want.total_weight) {
            eprintln!("NMWCU MISMATCH edges {:?} parts {:?} k {} weights {:?}",
                inst.graph.edges(), inst.parts, inst.k, inst.graph.weights());
            eprintln!("got {:?}\nwant {:?}", got, want);
            std::process::exit(1);
        }
        done_nmwcu += 1;
    }
    println!("crosscheck OK: {} enum + {} nmwcu instances, max nodes {}", done_enum, done_nmwcu, max_nodes);
}
