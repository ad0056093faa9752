"""WebSocket front door for browser clients.

One connection = one session speaking the same JSON messages as stdio.
"""

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .service import Session


def build_app(bundle_path: str, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="eqnav")

    @app.websocket("/session")
    async def session_socket(socket: WebSocket) -> None:
        await socket.accept()
        session = Session.open(bundle_path)
        for response in session.take_initial():
            await socket.send_json(response)
        try:
            while True:
                request = await socket.receive_json()
                for response in session.handle(request):
                    await socket.send_json(response)
        except WebSocketDisconnect:
            pass

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")
    return app
