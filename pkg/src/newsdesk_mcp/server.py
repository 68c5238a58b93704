"""FastMCP server entry point for the newsdesk monitor."""

from __future__ import annotations

import json

from fastmcp import FastMCP
from starlette.requests import Request
from starlette.responses import JSONResponse, Response

from newsdesk_mcp.core.catdsl import format_definition
from newsdesk_mcp.core.resources import RESOURCE_DIR, known_languages
from newsdesk_mcp.core.state import clusters_json, clusters_rss
from newsdesk_mcp.tools.alerts import current_alerts as _current_alerts
from newsdesk_mcp.tools.alerts import link_edges as _link_edges
from newsdesk_mcp.tools.categorize import categorize_text as _categorize
from newsdesk_mcp.tools.clusters import get_story as _get_story
from newsdesk_mcp.tools.clusters import latest_clusters as _latest_clusters
from newsdesk_mcp.tools.entities import get_entity_profile as _get_entity_profile
from newsdesk_mcp.tools.snapshot import get_snapshot

mcp = FastMCP(
    name="newsdesk-mcp",
    instructions="다국어 뉴스 모니터링: 클러스터, 스토리, 엔티티 프로필, 경보, 언어 간 링크 조회",
)


# ── Tools ────────────────────────────────────────────────────────────────


@mcp.tool()
def latest_clusters(language: str, format: str = "json") -> dict:
    """최신 라운드의 언어별 주요 기사 클러스터를 반환합니다.

    Args:
        language: ISO-639-1 언어 코드 (예: "en", "fr")
        format: 출력 형식 ("json" = 클러스터 목록, "rss" = RSS 2.0 문서)

    Returns:
        status, language, round_at, clusters (json) 또는 content (rss)
    """
    return _latest_clusters(language, format)


@mcp.tool()
def get_story(chain_id: str) -> dict:
    """스토리(라운드 간 연결된 클러스터 체인)와 일별 타임라인을 반환합니다.

    Args:
        chain_id: 스토리 ID (latest_clusters 결과의 chain_id)

    Returns:
        status, story, timeline
    """
    return _get_story(chain_id)


@mcp.tool()
def get_entity_profile(entity_id: int) -> dict:
    """엔티티의 이름 변형, 직함, 클러스터, 스토리, 인용, 공동 출현 정보를 반환합니다.

    Args:
        entity_id: 엔티티 숫자 ID

    Returns:
        status, profile (없는 ID면 status="not_found")
    """
    return _get_entity_profile(entity_id)


@mcp.tool()
def current_alerts() -> dict:
    """최신 라운드의 국가-카테고리 경보와 속보 플래그를 반환합니다.

    Returns:
        status, round_at, alerts, breaking
    """
    return _current_alerts()


@mcp.tool()
def link_edges(date: str) -> dict:
    """해당 날짜의 언어 간 클러스터 링크를 반환합니다.

    Args:
        date: ISO 날짜 (YYYY-MM-DD)

    Returns:
        status, date, edges (combined 점수 내림차순)
    """
    return _link_edges(date)


@mcp.tool()
def categorize_text(text: str, language: str = "en") -> dict:
    """카테고리 정의를 텍스트에 적용해 일치하는 카테고리를 반환합니다.

    Args:
        text: 분류할 텍스트
        language: ISO-639-1 언어 코드

    Returns:
        status, categories, countries, matches (카테고리별 일치 용어와 점수)
    """
    return _categorize(text, language)


# ── Resources ────────────────────────────────────────────────────────────


@mcp.resource("newsdesk://categories")
def get_categories() -> str:
    """카테고리 정의 목록을 제공합니다."""
    snapshot = get_snapshot()
    return json.dumps({
        "categories": [
            {
                "category_id": d.category_id,
                "label": d.label,
                "mode": d.mode.value,
                "country": d.country,
                "definition": format_definition(d),
            }
            for d in snapshot.definitions
        ],
    }, ensure_ascii=False, indent=2)


@mcp.resource("newsdesk://languages")
def get_languages() -> str:
    """지원 언어 코드와 언어별 리소스 유무를 제공합니다."""
    languages = []
    for code in sorted(known_languages()):
        languages.append({
            "code": code,
            "background_model": (RESOURCE_DIR / "models" / f"{code}.tsv").is_file(),
            "name_parameters": (RESOURCE_DIR / "names" / f"params_{code}.txt").is_file(),
            "geo_stop_list": (RESOURCE_DIR / "geostop" / f"{code}.txt").is_file(),
            "subject_corpus": (RESOURCE_DIR / "subjects" / "corpus" / code).is_dir(),
        })
    return json.dumps({"languages": languages}, ensure_ascii=False, indent=2)


@mcp.resource("newsdesk://config")
def get_config() -> str:
    """현재 적용 중인 설정값을 제공합니다."""
    return json.dumps(get_snapshot().config.model_dump(mode="json"), ensure_ascii=False, indent=2)


# ── HTTP routes ──────────────────────────────────────────────────────────


def _result(result: dict) -> JSONResponse:
    status = {"success": 200, "not_found": 404}.get(result["status"], 400)
    return JSONResponse(result, status_code=status)


@mcp.custom_route("/clusters/{language}.rss", methods=["GET"])
async def clusters_rss_route(request: Request) -> Response:
    snapshot = get_snapshot().state.rounds.get(request.path_params["language"])
    if snapshot is None:
        return _result(_latest_clusters(request.path_params["language"]))
    return Response(clusters_rss(snapshot), media_type="application/rss+xml; charset=utf-8")


@mcp.custom_route("/clusters/{language}.json", methods=["GET"])
async def clusters_json_route(request: Request) -> Response:
    snapshot = get_snapshot().state.rounds.get(request.path_params["language"])
    if snapshot is None:
        return _result(_latest_clusters(request.path_params["language"]))
    return Response(clusters_json(snapshot), media_type="application/json")


@mcp.custom_route("/stories/{chain_id}", methods=["GET"])
async def story_route(request: Request) -> Response:
    return _result(_get_story(request.path_params["chain_id"]))


@mcp.custom_route("/entities/{entity_id:int}", methods=["GET"])
async def entity_route(request: Request) -> Response:
    return _result(_get_entity_profile(request.path_params["entity_id"]))


@mcp.custom_route("/alerts", methods=["GET"])
async def alerts_route(request: Request) -> Response:
    return _result(_current_alerts())


@mcp.custom_route("/links/{date}", methods=["GET"])
async def links_route(request: Request) -> Response:
    return _result(_link_edges(request.path_params["date"]))


def main() -> None:
    """Run the MCP server."""
    mcp.run()


if __name__ == "__main__":
    main()
