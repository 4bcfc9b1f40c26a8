use std::io::Write;
use std::sync::{Arc, Mutex};

use partcert_core::construct::{build_chordal, build_general, build_perfect};
use partcert_core::graph::contains_induced;
use partcert_core::partition::Partition;
use partcert_core::verify::{
    graphs_of_order, replay_failure, verify_chordal_lemma, verify_general_lemma, verify_lemma,
    verify_perfect_lemma, FailureSink, LemmaParams, VerificationReport, VerifyOptions,
};
use partcert_core::{Graph, Limits, VertexSet};

/// Every set partition of `0..n`, by plain recursion.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(v: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if v == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..cur.len() {
            cur[i].push(v);
            go(v + 1, n, cur, out);
            cur[i].pop();
        }
        cur.push(vec![v]);
        go(v + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

fn connected(g: &Graph, part: &[usize]) -> bool {
    let mut seen = vec![part[0]];
    let mut i = 0;
    while i < seen.len() {
        let v = seen[i];
        for &w in part {
            if !seen.contains(&w) && g.has_edge(v, w) {
                seen.push(w);
            }
        }
        i += 1;
    }
    seen.len() == part.len()
}

fn quotient_of(g: &Graph, parts: &[Vec<usize>]) -> Graph {
    let mut edges = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if parts[i]
                .iter()
                .any(|&u| parts[j].iter().any(|&v| g.has_edge(u, v)))
            {
                edges.push((i, j));
            }
        }
    }
    Graph::new(parts.len(), edges).unwrap()
}

/// All vertex subsets of size `size` forming a clique, as sorted vectors.
fn cliques(g: &Graph, size: usize) -> Vec<Vec<usize>> {
    (0u64..1 << g.n())
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..g.n()).filter(|v| m >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|c: &Vec<usize>| {
            c.iter()
                .all(|&u| c.iter().all(|&v| u == v || g.has_edge(u, v)))
        })
        .collect()
}

fn spread(g: &Graph, parts: &[Vec<usize>], k: usize, r: usize) -> bool {
    cliques(g, k * r).into_iter().any(|c| {
        let hits: Vec<usize> = parts
            .iter()
            .map(|p| c.iter().filter(|v| p.contains(v)).count())
            .collect();
        hits.iter().filter(|&&h| h > 0).count() == r && hits.iter().all(|&h| h == 0 || h == k)
    })
}

fn part_clique(g: &Graph, parts: &[Vec<usize>], k: usize) -> bool {
    cliques(g, k + 1)
        .into_iter()
        .any(|c| parts.iter().any(|p| c.iter().all(|v| p.contains(v))))
}

/// Chordal by definition: no induced cycle of length at least four.
fn chordal_oracle(g: &Graph) -> bool {
    let n = g.n();
    for mask in 0u64..1 << n {
        let s: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        let two_regular = s
            .iter()
            .all(|&v| s.iter().filter(|&&w| g.has_edge(v, w)).count() == 2);
        if s.len() >= 4 && two_regular && connected(g, &s) {
            return false;
        }
    }
    true
}

/// (partition count, filtered count, failure count) by brute force.
fn oracle(g: &Graph, k: usize, r: usize, filter: impl Fn(&Graph) -> bool) -> (u64, u64, u64) {
    let (mut total, mut filtered, mut failures) = (0, 0, 0);
    for parts in set_partitions(g.n()) {
        if !parts.iter().all(|p| connected(g, p)) {
            continue;
        }
        total += 1;
        if !filter(&quotient_of(g, &parts)) {
            continue;
        }
        filtered += 1;
        if !spread(g, &parts, k, r) && !part_clique(g, &parts, k) {
            failures += 1;
        }
    }
    (total, filtered, failures)
}

fn counts(rep: &VerificationReport) -> (u64, u64, u64) {
    (rep.partition_count, rep.filtered_count, rep.failure_count)
}

#[test]
fn chordal_lemma_matches_brute_force() {
    let cases = [
        (Graph::empty(1), 1, 1),
        (Graph::prism(), 2, 1),
        (Graph::cycle(4), 2, 1),
        (Graph::star(3), 2, 1),
        (Graph::cycle(5), 1, 2),
        (build_chordal(1, 3).unwrap().graph, 1, 3),
    ];
    for (g, k, r) in cases {
        let rep = verify_chordal_lemma(&g, k, r).unwrap();
        assert_eq!(
            counts(&rep),
            oracle(&g, k, r, chordal_oracle),
            "{g:?} k={k} r={r}"
        );
    }
}

#[test]
fn base_family_members_are_certified() {
    assert!(verify_chordal_lemma(&Graph::empty(1), 1, 1)
        .unwrap()
        .is_certified());
    assert_eq!(
        verify_chordal_lemma(&Graph::empty(1), 1, 1)
            .unwrap()
            .partition_count,
        1
    );
    let rep = verify_chordal_lemma(&build_chordal(2, 1).unwrap().graph, 2, 1).unwrap();
    assert!(rep.is_certified());
    assert!(rep.filtered_count > 0);
    assert!(verify_chordal_lemma(&Graph::cycle(4), 2, 1)
        .unwrap()
        .is_certified());
    assert!(verify_perfect_lemma(&Graph::empty(1), 1, 1)
        .unwrap()
        .is_certified());
    assert!(verify_perfect_lemma(&Graph::cycle(5), 2, 1)
        .unwrap()
        .is_certified());
    assert!(verify_general_lemma(&Graph::empty(1), 3, 1, 2)
        .unwrap()
        .is_certified());
    assert!(verify_general_lemma(&Graph::complete(4), 1, 3, 4)
        .unwrap()
        .is_certified());
    let p3 = build_general(2, 2, 1).unwrap().graph;
    let rep = verify_general_lemma(&p3, 2, 2, 1).unwrap();
    assert!(rep.is_certified());
    assert_eq!(rep.partition_count, 4);
}

#[test]
fn star_fails_and_replays() {
    let star = Graph::star(3);
    let rep = verify_chordal_lemma(&star, 2, 1).unwrap();
    assert!(!rep.is_certified());
    assert!(rep.failure_count >= 1);
    let singletons = Partition::singletons(4);
    assert!(rep.failures.iter().any(|f| f.parts == singletons.parts()));
    for f in &rep.failures {
        assert!(replay_failure(&star, rep.params, f, &Limits::default()).unwrap());
    }
    // a doctored record no longer reproduces
    let mut bad = rep.failures[0].clone();
    bad.parts = vec![VertexSet::full(4)];
    assert!(!replay_failure(&star, rep.params, &bad, &Limits::default()).unwrap());
}

#[test]
fn general_lemma_catches_missing_patterns() {
    // a 4-cycle misses a triangle in every quotient that keeps parts small
    let c4 = Graph::cycle(4);
    let rep = verify_general_lemma(&c4, 2, 3, 1).unwrap();
    // brute force: every connected partition with no edge inside a part and
    // a quotient lacking some 3-vertex graph
    let cat = graphs_of_order(3, 4).unwrap();
    let mut want = 0;
    for parts in set_partitions(4) {
        if !parts.iter().all(|p| connected(&c4, p)) {
            continue;
        }
        let q = quotient_of(&c4, &parts);
        let all = cat
            .iter()
            .all(|h| contains_induced(&q, h, 8).unwrap().is_some());
        if !spread(&c4, &parts, 2, 1) && !part_clique(&c4, &parts, 2) && !all {
            want += 1;
        }
    }
    assert_eq!(rep.failure_count, want);
    assert!(want > 0);
    for f in &rep.failures {
        assert!(f.missing_pattern.is_some());
        assert!(replay_failure(&c4, rep.params, f, &Limits::default()).unwrap());
    }
}

#[test]
fn reports_do_not_depend_on_workers() {
    let g = build_chordal(2, 1)
        .unwrap()
        .graph
        .disjoint_union(&Graph::path(2));
    let mut reports = Vec::new();
    for workers in [1, 2, 4] {
        let opts = VerifyOptions {
            workers,
            ..VerifyOptions::default()
        };
        let mut rep = verify_lemma(&Graph::star(5), LemmaParams::chordal(2, 1), &opts).unwrap();
        rep.wall_time_ms = 0;
        rep.workers = 0;
        reports.push(rep);
        let mut rep = verify_lemma(&g, LemmaParams::perfect(2, 1), &opts).unwrap();
        rep.wall_time_ms = 0;
        rep.workers = 0;
        reports.push(rep);
    }
    assert_eq!(reports[0], reports[2]);
    assert_eq!(reports[0], reports[4]);
    assert_eq!(reports[1], reports[3]);
    assert_eq!(reports[1], reports[5]);
    assert!(reports[0].failure_count > 0);
}

#[derive(Clone, Default)]
struct Shared(Arc<Mutex<Vec<u8>>>);

impl Write for Shared {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        self.0.lock().unwrap().extend_from_slice(buf);
        Ok(buf.len())
    }

    fn flush(&mut self) -> std::io::Result<()> {
        Ok(())
    }
}

#[test]
fn failures_stream_as_ndjson() {
    let buf = Shared::default();
    let sink: FailureSink = Arc::new(Mutex::new(buf.clone()));
    let opts = VerifyOptions {
        failure_sink: Some(sink),
        max_recorded_failures: 1,
        ..VerifyOptions::default()
    };
    let rep = verify_lemma(&Graph::star(3), LemmaParams::chordal(2, 1), &opts).unwrap();
    assert_eq!(rep.failures.len(), 1);
    let text = String::from_utf8(buf.0.lock().unwrap().clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len() as u64, rep.failure_count);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["parts"].is_array());
    }
}

#[test]
fn report_json_round_trips() {
    let rep = verify_chordal_lemma(&Graph::star(3), 2, 1).unwrap();
    let text = rep.to_json();
    assert!(text.contains("\"schema_version\": 1"));
    assert_eq!(VerificationReport::from_json(&text).unwrap(), rep);
    let wrong = text.replace("\"schema_version\": 1", "\"schema_version\": 9");
    assert!(VerificationReport::from_json(&wrong).is_err());
}

#[test]
fn caps_and_parameters() {
    assert!(verify_chordal_lemma(&Graph::empty(13), 1, 1).is_err());
    assert!(verify_chordal_lemma(&Graph::empty(2), 0, 1).is_err());
    assert!(verify_general_lemma(&Graph::empty(2), 1, 5, 1).is_err());
    let err = verify_chordal_lemma(&Graph::empty(13), 1, 1).unwrap_err();
    assert!(err.is_resource_cap());
}

#[test]
fn perfect_two_one_small_checks() {
    let g = build_perfect(2, 1).unwrap().graph;
    let opts = VerifyOptions {
        workers: 4,
        ..VerifyOptions::default()
    };
    let rep = verify_lemma(&g, LemmaParams::perfect(2, 1), &opts).unwrap();
    assert!(rep.is_certified());
    assert!(rep.filtered_count <= rep.partition_count);
    assert!(rep.partition_count <= 115_975);
}
