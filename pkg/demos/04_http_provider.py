"""Page counts from a JSON search endpoint, with the on-disk cache.

A tiny local server stands in for a web search API so the demo runs offline.

Run: python3 demos/04_http_provider.py
"""
import json
import tempfile
import threading
import urllib.parse
from http.server import BaseHTTPRequestHandler, HTTPServer
from pathlib import Path

from unithood.counts import CountCache, HttpProvider, ProviderConfig, snapshot
from unithood.pipeline import PairRecord

FAKE_COUNTS = {'+"e coli"': 5200, '+"food poisoning"': 48000,
               '+"e coli" +"food poisoning"': 2100, '+"e coli food poisoning"': 310}


class Handler(BaseHTTPRequestHandler):
    def do_GET(self):
        q = urllib.parse.unquote(self.path.split("q=", 1)[1])
        body = json.dumps({"result": {"total": FAKE_COUNTS.get(q, 0)}}).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


server = HTTPServer(("127.0.0.1", 0), Handler)
threading.Thread(target=server.serve_forever, daemon=True).start()

with tempfile.TemporaryDirectory() as tmp:
    config = ProviderConfig(
        kind="http", endpoint_template=f"http://127.0.0.1:{server.server_port}/s?q={{query}}",
        count_field_path="result.total", cache_path=str(Path(tmp) / "cache.jsonl"),
        rate_limit=20.0, fixed_N=10**9)
    pair = PairRecord.from_json({"ax": "E coli", "b": "", "ay": "food poisoning"})
    provider = HttpProvider(config)
    print(snapshot(provider, pair))
    print("requests sent:", provider.requests_made)

    again = HttpProvider(config, cache=CountCache(config.cache_path))
    snapshot(again, pair)
    print("requests sent with a warm cache:", again.requests_made)

server.shutdown()
