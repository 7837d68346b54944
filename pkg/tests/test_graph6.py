import pytest
from hypothesis import given

from src.errors import Graph6FormatError
from src.graph import complete, empty, path
from src.graph6 import from_graph6, read_graph6_stream, to_graph6
from tests.strategies import graphs


class TestGraph6:
    def test_known_encodings(self):
        assert to_graph6(empty(0)) == "?"
        assert to_graph6(empty(1)) == "@"
        assert to_graph6(complete(2)) == "A_"
        assert to_graph6(complete(3)) == "Bw"
        assert to_graph6(path(3)) == "Bg"

    def test_decodes_known_strings(self):
        assert from_graph6("A_") == complete(2)
        assert from_graph6(">>graph6<<Bw") == complete(3)
        assert from_graph6("  Bg\n") == path(3)

    @given(graphs(max_n=12))
    def test_decode_inverts_encode(self, graph):
        assert from_graph6(to_graph6(graph)) == graph

    @pytest.mark.parametrize("text", ["", "A", "A__", "Bz", "A\x01", "~"])
    def test_malformed_input(self, text):
        with pytest.raises(Graph6FormatError):
            from_graph6(text)

    def test_error_is_a_value_error(self):
        with pytest.raises(ValueError):
            from_graph6("")

    def test_stream_skips_blanks_and_header(self):
        lines = [">>graph6<<", "A_", "", "Bw", "  "]
        assert list(read_graph6_stream(lines)) == [complete(2), complete(3)]
