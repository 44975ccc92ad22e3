use proptest::prelude::*;
use qltclab::{parse_alist, to_alist, BundleReport, CodeBundle, Matrices, Metadata};
use qltclab_core::analysis::locality_profile;
use qltclab_core::codes::{ClassicalCode, Distance};
use qltclab_core::f2::BinaryMatrix;
use qltclab_core::homology::{distance_balanced_css, RepetitionVariant};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BinaryMatrix> {
    (0..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
            let mut m = BinaryMatrix::zeros(r, c);
            for (i, &b) in bits.iter().enumerate() {
                m.set(i / c, i % c, b);
            }
            m
        })
    })
}

proptest! {
    #[test]
    fn alist_round_trip(m in matrix(20, 90)) {
        let text = to_alist(&m);
        prop_assert_eq!(parse_alist(&text).unwrap(), m.clone());
        let header = text.lines().next().unwrap().to_string();
        prop_assert_eq!(header, format!("{} {}", m.cols(), m.rows()));
    }

    #[test]
    fn alist_lines_are_padded(m in matrix(10, 20)) {
        let text = to_alist(&m);
        let lines: Vec<&str> = text.lines().collect();
        let widths: Vec<usize> = lines[1].split(' ').map(|t| t.parse().unwrap()).collect();
        for line in &lines[4..4 + m.cols()] {
            prop_assert_eq!(line.split_whitespace().count(), widths[0]);
        }
        for line in &lines[4 + m.cols()..] {
            prop_assert_eq!(line.split_whitespace().count(), widths[1]);
        }
    }

    #[test]
    fn classical_bundle_round_trip(m in matrix(8, 30), seed in any::<u64>(), d in 0usize..40) {
        let mut b = CodeBundle::classical(Metadata::new("code", "h=custom", seed), &ClassicalCode::new(m.clone()));
        b.reports.push(BundleReport::Locality { matrix: "h".into(), profile: locality_profile(&m) });
        b.reports.push(BundleReport::Distance { label: "d".into(), value: Distance::Finite(d) });
        prop_assert_eq!(CodeBundle::from_text(&b.to_text()).unwrap(), b);
    }

    #[test]
    fn css_bundle_round_trip(h in matrix(4, 6), ell in 2usize..=4, star in any::<bool>()) {
        let v = if star { RepetitionVariant::Star } else { RepetitionVariant::Line };
        let q = distance_balanced_css(&h, ell, v).unwrap();
        let b = CodeBundle::css(Metadata::new("balanced", format!("ell={ell}"), 1), &q);
        let back = CodeBundle::from_text(&b.to_text()).unwrap();
        let Matrices::Css { h_x, h_z } = &back.matrices else { panic!("css bundle") };
        prop_assert_eq!(h_x, q.h_x());
        prop_assert_eq!(h_z, q.h_z());
    }
}
