"""
CheckServer - request server for collision checks
"""

import json
import logging
import sys

from polytraj_ccd.config import config
from polytraj_ccd.core.errors import CCDError

logger = logging.getLogger(__name__)


class CheckServer:
    """
    Serves the check, generate and input_feasibility tools.
    Supports Stdio and HTTP transports.
    """

    def __init__(self, cfg=None, bounds=None):
        """
        Initialize the server

        Args:
            cfg: CheckConfig (configured values when None)
            bounds: InputBounds (configured values when None)
        """
        self.context = {
            "cfg": cfg or config.get_check_config(),
            "bounds": bounds or config.get_input_bounds(),
            "oracle_dt": config.oracle_dt,
        }
        self.tools = {}

        # Register default tools
        from polytraj_ccd.tools.request_tools import check, generate, input_feasibility

        self.register_tool(check)
        self.register_tool(generate)
        self.register_tool(input_feasibility)

    def register_tool(self, tool_func, tool_name=None):
        """
        Register a tool

        Args:
            tool_func: Tool function taking (context, payload)
            tool_name: Tool name (optional, defaults to function name)
        """
        name = tool_name or tool_func.__name__
        self.tools[name] = tool_func

    def get_registered_tools(self):
        return list(self.tools.keys())

    def handle_request(self, tool_name, payload=None):
        """
        Handle a tool request

        Args:
            tool_name: Tool name
            payload: Tool payload (optional)

        Returns:
            dict: Tool result, or {"error": ...}
        """
        if tool_name not in self.tools:
            return {"error": f"Unknown tool: {tool_name}"}

        try:
            return self.tools[tool_name](self.context, payload or {})
        except CCDError as e:
            return {"error": str(e), "type": type(e).__name__}
        except Exception as e:
            logger.exception("Tool %s failed", tool_name)
            return {"error": str(e)}

    def start_stdio(self, stdin=None, stdout=None):
        """
        Start server in Stdio mode: one JSON request per line, one JSON response per line
        """
        stdin = stdin or sys.stdin
        stdout = stdout or sys.stdout
        logger.info("Check server started (stdio)")

        for line in stdin:
            if not line.strip():
                continue
            try:
                request = json.loads(line)
            except json.JSONDecodeError:
                logger.warning("Invalid JSON input")
                stdout.write(json.dumps({"id": None, "result": {"error": "Invalid JSON input"}}) + "\n")
                stdout.flush()
                continue

            result = self.handle_request(request.get("tool"), request.get("payload", {}))
            stdout.write(json.dumps({"id": request.get("id"), "result": result}) + "\n")
            stdout.flush()

    def create_app(self):
        """
        FastAPI application exposing POST /request and GET /tools
        """
        from fastapi import FastAPI
        from pydantic import BaseModel

        app = FastAPI(title="polytraj-ccd check server")

        class ToolRequest(BaseModel):
            tool: str
            payload: dict = {}

        @app.post("/request")
        async def handle_tool_request(request: ToolRequest):
            return self.handle_request(request.tool, request.payload)

        @app.get("/tools")
        async def list_tools():
            return {"tools": self.get_registered_tools()}

        return app

    def start_http(self, host="127.0.0.1", port=8000):
        """
        Start server in HTTP mode using FastAPI
        """
        try:
            import uvicorn
        except ImportError:
            logger.error("FastAPI and uvicorn are required for HTTP mode: pip install fastapi uvicorn")
            return

        logger.info("Starting check server (HTTP) at http://%s:%d", host, port)
        uvicorn.run(self.create_app(), host=host, port=port)
