import io

from django.test import SimpleTestCase

from harness.reports import format_value, write_rows


class FormatValueTests(SimpleTestCase):
    def test_values(self):
        self.assertEqual(format_value(123456789012345678901), "123456789012345678901")
        self.assertEqual(format_value(0.730763410), "0.73076341")
        self.assertEqual(format_value(1 / 3), "0.333333333")
        self.assertEqual(format_value(2.5e-7), "2.5e-07")
        self.assertEqual(format_value(True), "true")
        self.assertEqual(format_value(0.0), "0")


class WriteRowsTests(SimpleTestCase):
    rows = [{"s": 2, "value": 1.6449340668482264}, {"s": 3, "value": 1.2020569031595942}]

    def test_csv(self):
        stream = io.StringIO()
        write_rows(stream, "zeta", self.rows)
        self.assertEqual(stream.getvalue(), "s,value\n2,1.64493407\n3,1.2020569\n")

    def test_tsv(self):
        stream = io.StringIO()
        write_rows(stream, "zeta", self.rows, fmt="tsv")
        self.assertEqual(stream.getvalue().splitlines()[0], "s\tvalue")

    def test_unknown_column(self):
        with self.assertRaises(ValueError):
            write_rows(io.StringIO(), "zeta", [{"s": 2, "other": 1}])
