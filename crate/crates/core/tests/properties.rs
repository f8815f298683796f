//! Property tests for the serialization round trips and the packing
//! certificate machinery.

use clumsy_core::copies::{enumerate_copies, parse_copy_table, write_copy_table};
use clumsy_core::generators::complete;
use clumsy_core::graph::{parse_graph, serialize_graph, Graph};
use clumsy_core::packing::{
    check_packing, parse_packing, recheck_certificate, write_packing, Packing,
};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2u32..=12).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len())
            .prop_map(move |edges| Graph::new(n, edges).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_serialization_round_trips(g in arb_graph()) {
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        // Edge ids are stable across the round trip.
        prop_assert_eq!(serialize_graph(&back), text);
    }

    #[test]
    fn copy_table_export_round_trips(g in arb_graph()) {
        let table = match enumerate_copies(&g, &complete(3)) {
            Ok(t) => t,
            Err(_) => return Ok(()),
        };
        let text = write_copy_table(&table);
        let back = parse_copy_table(&text).unwrap();
        prop_assert_eq!(back, table);
    }

    #[test]
    fn packing_files_and_certificates_round_trip(
        g in arb_graph(),
        picks in proptest::collection::vec(0usize..64, 0..6),
    ) {
        let table = match enumerate_copies(&g, &complete(3)) {
            Ok(t) if !t.is_empty() => t,
            _ => return Ok(()),
        };
        let members: Vec<u32> = picks
            .iter()
            .map(|&p| (p % table.len()) as u32)
            .collect();
        let packing = Packing::new(&table, members).unwrap();
        let text = write_packing(&packing);
        let back = parse_packing(&text, &table).unwrap();
        prop_assert_eq!(&back, &packing);
        // Whatever verdict comes out, its witness re-checks.
        let cert = check_packing(&table, &packing);
        prop_assert!(recheck_certificate(&table, &packing, &cert));
    }
}
