"""
Server tests - tool registry, stdio loop and HTTP app
"""

import io
import json

import pytest

from polytraj_ccd.server import CheckServer

SCENE = {"obstacles": [{"type": "sphere", "center": [1.0, 0.0, 0.0], "radius": 0.25}]}
TRAJECTORY = {"initial": {"position": [0, 0, 0]}, "end": {"position": [2, 0, 0]}, "duration": 1.0}


class TestCheckServer:
    """Request handling"""

    def setup_method(self):
        self.server = CheckServer()

    def test_registered_tools(self):
        assert set(self.server.get_registered_tools()) == {"check", "generate", "input_feasibility"}

    def test_unknown_tool(self):
        assert "error" in self.server.handle_request("teleport", {})

    def test_generate(self):
        result = self.server.handle_request("generate", {
            "initial": {"position": [0, 0, 0]},
            "end": {"position": [1, 0, 0]},
            "duration": 1.0,
        })
        assert result["alpha"] == pytest.approx((720.0, 0.0, 0.0))
        assert result["average_jerk_squared"] == pytest.approx(720.0)

    def test_check(self):
        result = self.server.handle_request("check", {"scene": SCENE, "trajectory": TRAJECTORY, "validate": True})
        assert result["verdict"] == "INFEASIBLE"
        assert result["mismatches"] == 0

    def test_input_feasibility(self):
        result = self.server.handle_request("input_feasibility", {"trajectory": TRAJECTORY})
        assert result["input_feasibility"] in {"FEASIBLE", "INFEASIBLE"}

    def test_invalid_payload(self):
        result = self.server.handle_request("generate", {"initial": {"position": [0, 0, 0]}})
        assert result["type"] == "ConfigurationError"

    def test_stdio(self):
        requests = "\n".join([
            json.dumps({"id": 1, "tool": "generate", "payload": {
                "initial": {"position": [0, 0, 0]}, "end": {"position": [0, 0, 0]}, "duration": 2.0,
            }}),
            "not json",
            json.dumps({"id": 2, "tool": "missing"}),
        ]) + "\n"
        stdout = io.StringIO()
        self.server.start_stdio(io.StringIO(requests), stdout)
        responses = [json.loads(line) for line in stdout.getvalue().splitlines()]
        assert len(responses) == 3
        assert responses[0]["id"] == 1
        assert responses[0]["result"]["average_jerk_squared"] == 0.0
        assert "error" in responses[1]["result"]
        assert responses[2]["id"] == 2 and "error" in responses[2]["result"]

    def test_http(self):
        pytest.importorskip("httpx")
        from fastapi.testclient import TestClient

        client = TestClient(self.server.create_app())
        assert set(client.get("/tools").json()["tools"]) == {"check", "generate", "input_feasibility"}
        response = client.post("/request", json={"tool": "check", "payload": {"scene": SCENE, "trajectory": TRAJECTORY}})
        assert response.status_code == 200
        assert response.json()["verdict"] == "INFEASIBLE"
