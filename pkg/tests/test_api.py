import json

def test_health_check(client):
    """Test the /health endpoint."""
    response = client.get("/health")
    assert response.status_code == 200
    data = response.get_json()
    assert data.get("status") == "healthy"

def test_api_v1_info(client):
    """Test the API versioning info endpoint."""
    response = client.get("/api/v1")
    assert response.status_code == 200
    data = response.get_json()
    assert data.get("version") == "1.0.0"
    assert "symbols" in data.get("endpoints")

def test_census(client):
    """The census counts classes of full symbols up to partnership."""
    response = client.get("/api/v1/symbols/census")
    assert response.status_code == 200
    data = response.get_json()
    assert data["classes"] == 25380
    assert data["families"]["deterministic"] == 16

def test_classify_symbol(client):
    """Test classification of a deterministic symbol."""
    response = client.post("/api/v1/symbols/classify", json={"symbol": "0231"})
    assert response.status_code == 200
    data = response.get_json()
    assert data["class"] == "DETERMINISTIC"
    assert data["partner"] == "1302"

def test_classify_missing_body(client):
    """Test classification without a body."""
    response = client.post("/api/v1/symbols/classify", data="", content_type="application/json")
    assert response.status_code == 400
    assert response.get_json()["error"] == "Request body is required"

def test_classify_bad_symbol(client):
    """Test classification of a malformed symbol."""
    response = client.post("/api/v1/symbols/classify", json={"symbol": "12x4"})
    assert response.status_code == 400
    assert "position 2" in response.get_json()["error"]

def test_equivalent_partners(client):
    """A symbol and its partner are equivalent."""
    response = client.post("/api/v1/symbols/equivalent", json={"first": "0231", "second": "1302"})
    assert response.status_code == 200
    data = response.get_json()
    assert data["equivalent"] is True
    assert data["canonical"][0] == data["canonical"][1]

def test_atoms(client):
    """Test listing atoms of a full symbol."""
    response = client.post("/api/v1/symbols/atoms", json={"symbol": "(01)101"})
    assert response.status_code == 200
    data = response.get_json()
    assert len(data["atoms"]) == 5
    assert data["components"] == ["0101", "1101"]

def test_synthesize(client):
    """Test synthesis of T_1101."""
    response = client.post("/api/v1/tilesets/synthesize", json={"symbol": "1101"})
    assert response.status_code == 200
    data = response.get_json()
    assert data["size"] == 67
    assert len(data["tiles"]) == 67

def test_synthesize_partial_symbol(client):
    """Synthesis needs a full symbol."""
    response = client.post("/api/v1/tilesets/synthesize", json={"symbol": "1.01"})
    assert response.status_code == 400
    assert "full" in response.get_json()["error"].lower()

def test_theorem1_rows(client):
    """Test the classification rows."""
    response = client.get("/api/v1/tilesets/theorem1")
    assert response.status_code == 200
    assert len(response.get_json()["rows"]) == 9

def test_get_catalogue(client):
    """Test fetching a named catalogue."""
    response = client.get("/api/v1/tilesets/catalogues/T_Pi")
    assert response.status_code == 200
    assert response.get_json()["size"] == 16

def test_unknown_catalogue(client):
    """Unknown catalogue names are rejected with the error kind."""
    response = client.get("/api/v1/tilesets/catalogues/T_nope")
    assert response.status_code == 400
    assert response.get_json()["kind"] == "UnknownCatalogueError"

def test_admissible(client):
    """Test block admissibility of T_Pi."""
    response = client.post("/api/v1/tilesets/admissible", json={"catalogue": "T_Pi"})
    assert response.status_code == 200
    assert response.get_json()["blocks"] == ["I", "U"]

def test_admissible_needs_one_source(client):
    """Naming a catalogue and a symbol at once is rejected."""
    response = client.post("/api/v1/tilesets/admissible", json={"catalogue": "T1", "symbol": "1101"})
    assert response.status_code == 400

def test_closure(client):
    """Test closing the pi rule."""
    response = client.post("/api/v1/tilesets/closure", json={"rules": ["pi"]})
    assert response.status_code == 200
    assert response.get_json()["size"] == 16

def test_closure_bad_rule(client):
    """Test closure with an unknown rule."""
    response = client.post("/api/v1/tilesets/closure", json={"rules": ["sigma"]})
    assert response.status_code == 400
    assert "rule" in response.get_json()["error"].lower()

def test_expand(client):
    """Test expanding a symbol one level."""
    response = client.post("/api/v1/substitution/expand", json={"symbol": "0231", "level": 1})
    assert response.status_code == 200
    assert len(response.get_json()["dominoes"]) == 4

def test_expand_level_limit(client):
    """Levels beyond the configured maximum are rejected."""
    response = client.post("/api/v1/substitution/expand", json={"symbol": "0231", "level": 99})
    assert response.status_code == 400
    assert "level" in response.get_json()["error"].lower()

def test_expand_then_deflate(client):
    """A deterministic supertile deflates to its parents."""
    expanded = client.post("/api/v1/substitution/expand", json={"symbol": "1101", "level": 2}).get_json()
    response = client.post("/api/v1/substitution/deflate", json={"symbol": "1101", "patch": expanded})
    assert response.status_code == 200
    assert len(response.get_json()["patch"]["dominoes"]) == 4

def test_render(client):
    """Test SVG rendering of a supertile."""
    response = client.post("/api/v1/substitution/render", json={"symbol": "1101", "level": 2})
    assert response.status_code == 200
    assert response.mimetype == "image/svg+xml"
    assert response.data.decode("utf-8").count("<rect") == 16

def test_verify_edge_mismatch(client):
    """Two outward edges facing each other are reported."""
    payload = {
        "catalogue": "T1",
        "patch": {"cells": [
            {"x": 0, "y": 0, "tile": "[-+]", "pose": 0},
            {"x": 1, "y": 0, "tile": "[-+]", "pose": 0},
        ]},
    }
    response = client.post("/api/v1/solver/verify", json=payload)
    assert response.status_code == 200
    data = response.get_json()
    assert data["ok"] is False
    assert data["violations"][0]["kind"] == "EDGE"

def test_solve_unsat(client):
    """Outward tiles never tile a domino-shaped region."""
    response = client.post("/api/v1/solver/solve", json={"catalogue": "T+", "width": 2, "height": 1})
    assert response.status_code == 200
    data = response.get_json()
    assert data["status"] == "UNSAT"
    assert data["tilings"] == []

def test_solve_sat(client):
    """T1 tiles a 2x2 square."""
    response = client.post("/api/v1/solver/solve", json={"catalogue": "T1", "width": 2, "height": 2})
    assert response.status_code == 200
    data = response.get_json()
    assert data["status"] == "SAT"
    assert len(data["tilings"][0]["cells"]) == 4

def test_solve_bad_mode(client):
    """Test solving with an unknown mode."""
    response = client.post("/api/v1/solver/solve", json={"catalogue": "T1", "width": 2, "height": 2, "mode": "SOME"})
    assert response.status_code == 400

def test_torus_none(client):
    """No 4x4 torus is tiled by T1."""
    response = client.post("/api/v1/solver/torus", json={"catalogue": "T1", "width": 4, "height": 4})
    assert response.status_code == 200
    assert response.get_json()["status"] == "NONE"

def test_solve_odd_torus_is_parity(client):
    """An odd torus period is answered before any search."""
    response = client.post("/api/v1/solver/solve",
                           json={"catalogue": "T1", "width": 3, "height": 4, "boundary": "TORUS"})
    assert response.status_code == 200
    assert response.get_json()["status"] == "NONE_BY_PARITY"

def test_torus_period_limit(client):
    """Test torus periods beyond the configured maximum."""
    response = client.post("/api/v1/solver/torus", json={"catalogue": "T1", "width": 20, "height": 20})
    assert response.status_code == 400

def test_unknown_route(client):
    """Test 404 handling."""
    response = client.get("/api/v1/nowhere")
    assert response.status_code == 404
    assert json.loads(response.data)["error"] == "Resource not found"
