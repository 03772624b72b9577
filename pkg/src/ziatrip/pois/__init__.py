from .models import GeoPoint, OpeningHours, Poi, TravelMatrix
from .catalog import PoiCatalog
from .travel import haversine_km, travel_time, build_matrix
from .places import FixturePlacesProvider, HttpPlacesProvider, poi_from_provider_record

__all__ = [
    "GeoPoint", "OpeningHours", "Poi", "TravelMatrix", "PoiCatalog",
    "haversine_km", "travel_time", "build_matrix",
    "FixturePlacesProvider", "HttpPlacesProvider", "poi_from_provider_record",
]
