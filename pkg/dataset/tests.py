import numpy as np
from django.test import SimpleTestCase

from core.exceptions import ArgumentError, DatasetParseError, DomainError, LeakageError
from core.testing import statlog_like_text
from .audit import LABEL_AUDIT
from .domain import STATLOG_FEATURES, Dataset, FeatureKind, FeatureMask, FeatureSpec, SplitPlan
from .services import (
    apply_mask, apply_scaler, fit_scaler, holdout_split, kfold_split, parse_csv,
    parse_statlog, split,
)


class ParseStatlogTests(SimpleTestCase):

    def test_parses_rows_and_remaps_labels(self):
        ds = parse_statlog(statlog_like_text(m=30).encode())
        self.assertEqual((ds.m, ds.n), (30, 13))
        self.assertEqual(ds.labels.tolist(), [i % 2 for i in range(30)])
        self.assertEqual(ds.feature_names[11:], ['ca', 'thal'])

    def test_single_row_with_label_two(self):
        ds = parse_statlog("70 1 4 130 322 0 2 109 0 2.4 2 3 3 2\n")
        self.assertEqual(ds.m, 1)
        self.assertEqual(ds.labels.tolist(), [1])

    def test_empty_input_is_an_error(self):
        with self.assertRaisesMessage(DatasetParseError, "no records"):
            parse_statlog(b"")
        with self.assertRaises(DatasetParseError):
            parse_statlog("\n   \n")

    def test_wrong_field_count_names_the_line(self):
        text = "70 1 4 130 322 0 2 109 0 2.4 2 3 3 2\n70 1 4 130\n"
        with self.assertRaises(DatasetParseError) as ctx:
            parse_statlog(text)
        self.assertEqual(ctx.exception.line, 2)

    def test_non_numeric_token(self):
        with self.assertRaises(DatasetParseError):
            parse_statlog("70 1 4 130 322 x 2 109 0 2.4 2 3 3 2\n")

    def test_label_outside_domain(self):
        with self.assertRaises(DomainError):
            parse_statlog("70 1 4 130 322 0 2 109 0 2.4 2 3 3 3\n")

    def test_specs_follow_statlog_order(self):
        self.assertEqual(len(STATLOG_FEATURES), 13)
        self.assertEqual([s.index for s in STATLOG_FEATURES], list(range(13)))
        self.assertEqual(STATLOG_FEATURES[0].name, 'age')
        self.assertEqual(STATLOG_FEATURES[12].name, 'thal')


class ParseCsvTests(SimpleTestCase):

    HEADER = ("Age,Sex,CP,Blood_Pressure,chol,FBS,restecg,thalach,exang,oldpeak,"
              "Slope,CA,Thal,Class")

    def test_header_names_map_case_insensitively(self):
        text = self.HEADER + "\n70,1,4,130,322,0,2,109,0,2.4,2,3,3,2\n67,0,3,115,564,0,2,160,0,1.6,2,0,7,1\n"
        ds = parse_csv(text)
        self.assertEqual((ds.m, ds.n), (2, 13))
        self.assertEqual(ds.labels.tolist(), [1, 0])
        self.assertEqual(ds.features[1, 12], 7.0)

    def test_reordered_columns_are_put_in_table_order(self):
        names = self.HEADER.split(',')
        values = "70,1,4,130,322,0,2,109,0,2.4,2,3,3,2".split(',')
        text = ','.join(reversed(names)) + '\n' + ','.join(reversed(values)) + '\n'
        ds = parse_csv(text)
        self.assertEqual(ds.features[0].tolist()[:3], [70.0, 1.0, 4.0])

    def test_missing_column(self):
        with self.assertRaises(DatasetParseError):
            parse_csv("age,sex,class\n1,2,1\n")


class SplitTests(SimpleTestCase):

    def setUp(self):
        rng = np.random.default_rng(7)
        self.ds = Dataset(rng.normal(size=(270, 3)), (np.arange(270) < 150).astype(int))

    def test_holdout_sizes_use_floor(self):
        train, test = holdout_split(self.ds, 0.75, seed=1)
        self.assertEqual((train.m, test.m), (202, 68))

    def test_holdout_is_deterministic(self):
        a_train, _ = holdout_split(self.ds, 0.75, seed=5)
        b_train, _ = holdout_split(self.ds, 0.75, seed=5)
        np.testing.assert_array_equal(a_train.features, b_train.features)

    def test_holdout_partitions_are_disjoint(self):
        train, test = holdout_split(self.ds, 0.75, seed=3, stratified=False)
        rows = {tuple(r) for r in train.features} | {tuple(r) for r in test.features}
        self.assertEqual(len(rows), 270)

    def test_holdout_rejects_degenerate_fractions(self):
        for fraction in (0.0, 1.0, 1.5):
            with self.assertRaises(ArgumentError):
                holdout_split(self.ds, fraction, seed=0)
        tiny = Dataset([[0.0], [1.0]], [0, 1])
        with self.assertRaises(ArgumentError):
            holdout_split(tiny, 0.3, seed=0)

    def test_ten_folds_of_27(self):
        folds = kfold_split(self.ds, 10, stratified=True, seed=2)
        self.assertEqual([test.m for _, test in folds], [27] * 10)
        for train, test in folds:
            self.assertEqual(train.m + test.m, 270)
            self.assertEqual(test.class_counts(), (12, 15))

    def test_two_fold_partition_property(self):
        (tr_a, te_a), (tr_b, te_b) = kfold_split(self.ds, 2, stratified=False, seed=4)
        rows_a = {tuple(r) for r in te_a.features}
        rows_b = {tuple(r) for r in te_b.features}
        self.assertFalse(rows_a & rows_b)
        self.assertEqual(len(rows_a | rows_b), 270)

    def test_leave_one_out(self):
        small = self.ds.subset(range(12))
        folds = kfold_split(small, small.m, stratified=False, seed=0)
        self.assertEqual([test.m for _, test in folds], [1] * 12)

    def test_k_out_of_range(self):
        for k in (1, 271):
            with self.assertRaises(ArgumentError):
                kfold_split(self.ds, k, seed=0)

    def test_fold_sizes_differ_by_at_most_one(self):
        sizes = [test.m for _, test in kfold_split(self.ds.subset(range(101)), 7, seed=9)]
        self.assertLessEqual(max(sizes) - min(sizes), 1)

    def test_split_plan_dispatch(self):
        self.assertEqual(len(split(self.ds, SplitPlan.holdout(seed=1))), 1)
        self.assertEqual(len(split(self.ds, SplitPlan.kfold(5, seed=1))), 5)
        with self.assertRaises(ArgumentError):
            SplitPlan.holdout(fraction=1.0)


class ScalerTests(SimpleTestCase):

    def test_constant_column_maps_to_zero(self):
        ds = Dataset([[5.0], [5.0], [5.0]], [0, 1, 0])
        scaled = apply_scaler(fit_scaler(ds), ds)
        self.assertEqual(scaled.features[:, 0].tolist(), [0.0, 0.0, 0.0])

    def test_constant_fractional_column_maps_to_zero(self):
        # 0.1 * 3 deja una desviación de redondeo del orden de 1e-17
        ds = Dataset(np.column_stack([np.full(7, 0.1) * 3, np.arange(7.0)]), [0, 1] * 3 + [0])
        scaler = fit_scaler(ds)
        self.assertEqual(scaler.stds[0], 0.0)
        self.assertEqual(apply_scaler(scaler, ds).features[:, 0].tolist(), [0.0] * 7)

    def test_two_point_population_zscore(self):
        ds = Dataset([[0.0], [2.0]], [0, 1])
        scaler = fit_scaler(ds)
        self.assertEqual((scaler.means[0], scaler.stds[0]), (1.0, 1.0))
        self.assertEqual(apply_scaler(scaler, ds).features[:, 0].tolist(), [-1.0, 1.0])

    def test_training_columns_are_standardized(self):
        rng = np.random.default_rng(0)
        ds = Dataset(rng.normal(3.0, 2.0, size=(50, 4)), rng.integers(0, 2, 50))
        scaled = apply_scaler(fit_scaler(ds), ds)
        np.testing.assert_allclose(scaled.features.mean(axis=0), 0.0, atol=1e-9)
        np.testing.assert_allclose(scaled.features.std(axis=0), 1.0, atol=1e-9)

    def test_binary_and_nominal_columns_pass_through(self):
        specs = [FeatureSpec('a', FeatureKind.BINARY, 0), FeatureSpec('b', FeatureKind.NOMINAL, 1),
                 FeatureSpec('c', FeatureKind.CONTINUOUS, 2)]
        ds = Dataset([[0, 3, 1.0], [1, 7, 3.0]], [0, 1], specs)
        scaled = apply_scaler(fit_scaler(ds), ds)
        self.assertEqual(scaled.features[:, :2].tolist(), [[0, 3], [1, 7]])
        self.assertEqual((scaled.m, scaled.n, scaled.specs), (ds.m, ds.n, ds.specs))

    def test_dimension_mismatch(self):
        scaler = fit_scaler(Dataset([[1.0, 2.0]], [0]))
        with self.assertRaises(ArgumentError):
            apply_scaler(scaler, Dataset([[1.0]], [0]))


class MaskTests(SimpleTestCase):

    def setUp(self):
        self.ds = parse_statlog(statlog_like_text(m=10))

    def test_full_mask_is_identity(self):
        masked = apply_mask(self.ds, FeatureMask.full(13))
        np.testing.assert_array_equal(masked.features, self.ds.features)

    def test_ca_and_thal_columns(self):
        masked = apply_mask(self.ds, FeatureMask.from_indices([11, 12], 13))
        self.assertEqual(masked.n, 2)
        self.assertEqual(masked.feature_names, ['ca', 'thal'])
        np.testing.assert_array_equal(masked.features, self.ds.features[:, [11, 12]])

    def test_all_zero_mask_is_rejected(self):
        with self.assertRaises(ArgumentError):
            apply_mask(self.ds, [0] * 13)
        with self.assertRaises(ArgumentError):
            apply_mask(self.ds, FeatureMask.full(5))

    def test_mask_composition(self):
        a = FeatureMask.from_indices([0, 2, 5, 7, 11], 13)
        b = FeatureMask.from_indices([2, 3, 7, 11, 12], 13)
        nested = apply_mask(apply_mask(self.ds, a), b.restrict(a))
        direct = apply_mask(self.ds, a & b)
        np.testing.assert_array_equal(nested.features, direct.features)


class LabelAuditTests(SimpleTestCase):

    def test_reading_test_labels_is_detected(self):
        ds = Dataset(np.arange(20.0).reshape(10, 2), [0, 1] * 5)
        _, test = holdout_split(ds, 0.5, seed=0)
        LABEL_AUDIT.assert_unread(test)
        scaled = apply_scaler(fit_scaler(test), test)
        test.labels
        with self.assertRaises(LeakageError):
            LABEL_AUDIT.assert_unread(scaled)
        LABEL_AUDIT.release(scaled)
        LABEL_AUDIT.assert_unread(test)

    def test_only_test_partitions_are_tracked(self):
        ds = Dataset(np.arange(20.0).reshape(10, 2), [0, 1] * 5)
        before = len(LABEL_AUDIT)
        for seed in range(50):
            for train, _ in kfold_split(ds, 5, seed=seed):
                train.labels
        self.assertEqual(len(LABEL_AUDIT), before)
