import json
from typing import Any

import aiohttp
import requests
from requests import RequestException


class AsyncHttpClient:
    """
    Reusable aiohttp session for chat-completion requests.
    """

    def __init__(self, timeout: float | None = None):
        self.session = None
        self.timeout = timeout

    async def __aenter__(self):
        self.session = aiohttp.ClientSession()
        return self

    async def __aexit__(self, exc_type, exc_val, exc_tb):
        if self.session:
            await self.session.close()
            self.session = None

    async def request(self, method: str, url: str, **kwargs) -> bytes:
        """
        Makes an HTTP request and returns the raw body.

        :param method: The HTTP method.
        :param url: The endpoint URL.
        :param kwargs: Additional arguments for aiohttp's request.
        """
        if not self.session:
            raise RuntimeError("Session not initialized. Use 'async with' block.")
        timeout = aiohttp.ClientTimeout(total=kwargs.pop('timeout', self.timeout))
        async with self.session.request(method, url, timeout=timeout, **kwargs) as response:
            body = await response.read()
            if response.status >= 400:
                raise aiohttp.ClientResponseError(
                    response.request_info,
                    response.history,
                    status=response.status,
                    message=body.decode('utf-8', errors='replace'),
                )
            return body

    async def post_json(self, url: str, **kwargs) -> Any:
        response = await self.request('POST', url, **kwargs)
        return json.loads(response.decode('utf-8'))


class HttpClient:
    """
    Reusable requests session for chat-completion requests.
    """

    def __init__(self, timeout: float | None = None):
        self.session = None
        self.timeout = timeout

    def __enter__(self):
        self.session = requests.Session()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.session:
            self.session.close()
            self.session = None

    def request(self, method: str, url: str, **kwargs) -> bytes:
        """
        Makes an HTTP request.

        :param method: The HTTP method.
        :param url: The endpoint URL.
        :param kwargs: Additional arguments for requests.
        :return: The response content as bytes.
        :raises: requests.exceptions.RequestException
        """
        if not self.session:
            raise RuntimeError("Session not initialized. Use 'with' block.")
        kwargs.setdefault('timeout', self.timeout)
        try:
            response = self.session.request(method, url, **kwargs)
            response.raise_for_status()
            return response.content
        except RequestException as e:
            # keep the server's error body, it usually names the bad field
            if getattr(e, 'response', None) is not None and hasattr(e.response, 'content'):
                error_message = f"{str(e)}: {e.response.content.decode('utf-8', errors='replace')}"
                raise type(e)(error_message) from None
            raise

    def post_json(self, url: str, **kwargs) -> Any:
        """
        Sends a POST request with a JSON payload and returns the parsed JSON response.

        :raises: requests.exceptions.RequestException, json.JSONDecodeError
        """
        response = self.request('POST', url, **kwargs)
        return json.loads(response.decode('utf-8'))
