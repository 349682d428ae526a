import pytest

from driftmap.schema import (
    AttributeSchema,
    Attribute,
    IngestError,
    SchemaError,
    ingest_records,
    parse_schema,
)

ELECTRICITY_CONFIG = """
attributes:
  - {name: nswprice, kind: numeric}
  - {name: nswdemand, kind: numeric}
  - {name: vicprice, kind: numeric}
  - {name: vicdemand, kind: numeric}
  - {name: transfer, kind: numeric}
  - {name: class, kind: categorical}
class: class
timestamp:
  source: record-index
  ticks_per_day: 48
  epoch: "1996-05-07"
"""


def test_parse_schema_electricity_style():
    schema = parse_schema(ELECTRICITY_CONFIG)
    assert schema.covariate_names == (
        "nswprice", "nswdemand", "vicprice", "vicdemand", "transfer")
    assert schema.class_attribute == "class"
    assert all(schema.attribute(n).kind == "numeric" for n in schema.covariate_names)
    assert schema.ticks_per_day == 48


def test_parse_schema_class_only_is_legal():
    schema = parse_schema({
        "attributes": [{"name": "label", "kind": "categorical"}],
        "class": "label",
    })
    assert schema.covariate_names == ()


def test_numeric_class_rejected():
    with pytest.raises(SchemaError):
        parse_schema({
            "attributes": [{"name": "x", "kind": "numeric"}],
            "class": "x",
        })


def test_duplicate_attribute_rejected():
    with pytest.raises(SchemaError):
        parse_schema({
            "attributes": [
                {"name": "x", "kind": "numeric"},
                {"name": "x", "kind": "numeric"},
                {"name": "y", "kind": "categorical"},
            ],
            "class": "y",
        })


def test_excluded_overlap_rejected():
    with pytest.raises(SchemaError):
        parse_schema({
            "attributes": [
                {"name": "x", "kind": "numeric"},
                {"name": "y", "kind": "categorical"},
            ],
            "class": "y",
            "exclude": ["x"],
        })


@pytest.fixture
def tiny_schema():
    return parse_schema({
        "attributes": [
            {"name": "x", "kind": "numeric"},
            {"name": "y", "kind": "categorical"},
        ],
        "class": "y",
    })


def test_csv_record_index_timestamps(tiny_schema):
    data = "x,y\n1.5,a\n2.5,b\n3.5,a\n"
    ds = ingest_records(data, "csv", tiny_schema)
    assert len(ds) == 3
    assert [ts for ts, _ in ds.records] == [0, 1, 2]
    assert ds.column("y") == ["a", "b", "a"]


def test_csv_timestamp_column_sorts_stably():
    schema = parse_schema({
        "attributes": [{"name": "y", "kind": "categorical"}],
        "class": "y",
        "timestamp": {"source": "t"},
    })
    data = "t,y\n5,c\n1,a\n5,b\n"
    ds = ingest_records(data, "csv", schema)
    assert [ts for ts, _ in ds.records] == [1, 5, 5]
    # equal timestamps keep input order
    assert ds.column("y") == ["a", "c", "b"]


def test_csv_bad_numeric_cell_names_row_and_column(tiny_schema):
    data = "x,y\n1.5,a\nbogus,b\n"
    with pytest.raises(IngestError, match=r"row 2.*'x'"):
        ingest_records(data, "csv", tiny_schema)


def test_csv_row_arity_mismatch(tiny_schema):
    data = "x,y\n1.5,a,extra\n"
    with pytest.raises(IngestError, match="row 1"):
        ingest_records(data, "csv", tiny_schema)


def test_missing_markers_become_none(tiny_schema):
    data = "x,y\n?,a\n,b\n1.0,?\n"
    ds = ingest_records(data, "csv", tiny_schema)
    assert ds.column("x") == [None, None, 1.0]
    assert ds.column("y") == ["a", "b", None]


def test_excluded_column_dropped():
    schema = parse_schema({
        "attributes": [
            {"name": "x", "kind": "numeric"},
            {"name": "y", "kind": "categorical"},
        ],
        "class": "y",
        "exclude": ["noise"],
    })
    data = "x,noise,y\n1.0,zzz,a\n"
    ds = ingest_records(data, "csv", schema)
    assert ds.schema.attribute_names == ("x", "y")
    assert ds.records[0][1] == (1.0, "a")


ARFF_SAMPLE = """\
% comment line
@relation demo
@attribute x numeric
@attribute 'y label' {a,b}
@data
0.25,a
0.75,b
0.5,a
"""


def test_arff_subset_parsing():
    schema = parse_schema({
        "attributes": [
            {"name": "x", "kind": "numeric"},
            {"name": "y label", "kind": "categorical"},
        ],
        "class": "y label",
    })
    ds = ingest_records(ARFF_SAMPLE, "arff", schema)
    assert len(ds) == 3
    assert ds.column("y label") == ["a", "b", "a"]


def test_arff_without_data_section_errors(tiny_schema):
    with pytest.raises(IngestError, match="@data"):
        ingest_records("@relation demo\n@attribute x numeric\n", "arff", tiny_schema)


def test_sparse_arff_rejected(tiny_schema):
    text = "@attribute x numeric\n@attribute y {a}\n@data\n{0 1.0}\n"
    with pytest.raises(IngestError, match="sparse"):
        ingest_records(text, "arff", tiny_schema)


def test_csv_round_trip(tiny_schema):
    data = "x,y\n1.5,a\n?,b\n3.25,a\n"
    ds = ingest_records(data, "csv", tiny_schema)
    serialized = ds.to_csv()

    round_schema = AttributeSchema(
        attributes=tiny_schema.attributes,
        class_attribute=tiny_schema.class_attribute,
        timestamp_source="__timestamp__",
    )
    again = ingest_records(serialized, "csv", round_schema)
    assert again.records == ds.records
    # and serializing once more is a fixed point
    assert again.to_csv() == serialized


def test_no_silent_drops(tiny_schema):
    rows = "\n".join(f"{i}.0,a" for i in range(57))
    ds = ingest_records("x,y\n" + rows + "\n", "csv", tiny_schema)
    assert len(ds) == 57
