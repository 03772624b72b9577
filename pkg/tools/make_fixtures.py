"""Generate the sample POI catalog (data/pois_molise.jsonl).

Run from the repo root: python3 tools/make_fixtures.py
Names and coordinates are plausible for the Campobasso area; hours, costs
and durations are invented fixture data.
"""

import json
from pathlib import Path

W_ALL = [[[0, 1440]]] * 7
W_STD = [[[540, 1140]]] * 7          # 09:00-19:00
W_MUSEUM = [[[540, 780], [900, 1140]]] * 6 + [[]]          # split; closed Sunday
W_CHURCH = [[[480, 720], [900, 1110]]] * 7
W_REST = [[[720, 900], [1140, 1380]]] * 7                  # lunch + dinner
W_MORNING = [[[480, 840]]] * 7

POIS = [
    # Campobasso
    ("cb-castello", "Castello Monforte", "Campobasso", ["history", "culture"],
     41.5640, 14.6570, W_STD, 60, 5.0, "Hilltop castle with city views."),
    ("cb-museo-sannitico", "Museo Sannitico", "Campobasso", ["culture", "history"],
     41.5590, 14.6620, W_MUSEUM, 90, 6.0, "Archaeological collection of Samnite finds."),
    ("cb-cattedrale", "Cattedrale della Santissima Trinita", "Campobasso", ["religion", "culture"],
     41.5580, 14.6590, W_CHURCH, 45, 0.0, "Neoclassical cathedral in the city centre."),
    ("cb-san-giorgio", "Chiesa di San Giorgio", "Campobasso", ["religion", "history"],
     41.5635, 14.6555, W_CHURCH, 30, 0.0, "Romanesque church below the castle."),
    ("cb-san-bartolomeo", "Chiesa di San Bartolomeo", "Campobasso", ["religion", "history"],
     41.5628, 14.6548, W_CHURCH, 30, 0.0, "Thirteenth-century church on the old town slope."),
    ("cb-villa-de-capoa", "Villa de Capoa", "Campobasso", ["nature", "family"],
     41.5560, 14.6600, W_STD, 60, 0.0, "Monumental garden with centuries-old trees."),
    ("cb-trattoria-nonna", "Trattoria della Nonna", "Campobasso", ["food", "restaurant", "vegetarian"],
     41.5585, 14.6615, W_REST, 90, 18.0, "Home-style cooking, vegetarian options."),
    ("cb-osteria-borgo", "Osteria del Borgo Antico", "Campobasso", ["food", "restaurant"],
     41.5632, 14.6560, W_REST, 90, 22.0, "Osteria in the old town, local dishes."),
    ("cb-mercato", "Mercato Coperto", "Campobasso", ["shopping", "food"],
     41.5570, 14.6640, W_MORNING, 45, 0.0, "Covered market with regional produce."),
    ("cb-teatro-savoia", "Teatro Savoia", "Campobasso", ["culture", "events"],
     41.5595, 14.6605, W_STD, 90, 12.0, "Historic theatre with a seasonal programme."),
    ("cb-parco-eremita", "Parco dell'Eremita", "Campobasso", ["nature", "sport"],
     41.5700, 14.6500, W_ALL, 120, 0.0, "Wooded park with walking trails."),
    ("cb-gelateria-corso", "Gelateria del Corso", "Campobasso", ["food", "family", "vegetarian"],
     41.5588, 14.6608, W_STD, 30, 4.0, "Artisan ice cream on the main avenue."),
    ("cb-san-leonardo", "Chiesa di San Leonardo", "Campobasso", ["religion", "history"],
     41.5600, 14.6582, W_CHURCH, 30, 0.0, "Gothic portal church on the corso."),
    ("cb-sant-antonio", "Chiesa di Sant'Antonio Abate", "Campobasso", ["religion", "culture"],
     41.5618, 14.6570, W_CHURCH, 35, 0.0, "Baroque interiors and wooden altars."),
    ("cb-museo-presepi", "Museo dei Presepi", "Campobasso", ["culture", "family"],
     41.5612, 14.6585, W_MUSEUM, 45, 4.0, "Nativity-scene collection in the old town."),
    ("cb-museo-misteri", "Museo dei Misteri", "Campobasso", ["culture", "events"],
     41.5545, 14.6660, W_MUSEUM, 60, 5.0, "Machines of the Corpus Domini procession."),
    ("cb-palazzo-gil", "Palazzo GIL", "Campobasso", ["culture", "events"],
     41.5555, 14.6585, W_STD, 60, 6.0, "Rationalist palace hosting exhibitions."),
    ("cb-fontana-vecchia", "Fontana Vecchia", "Campobasso", ["history"],
     41.5625, 14.6595, W_ALL, 15, 0.0, "Old public fountain below the walls."),
    ("cb-belvedere", "Belvedere dei Monti", "Campobasso", ["nature"],
     41.5672, 14.6530, W_ALL, 30, 0.0, "Panoramic terrace over the Matese range."),
    ("cb-sentiero-monforte", "Sentiero del Monforte", "Campobasso", ["nature", "sport"],
     41.5665, 14.6545, W_ALL, 90, 0.0, "Path circling the castle hill."),
    ("cb-enoteca-tintilia", "Enoteca della Tintilia", "Campobasso", ["food", "shopping"],
     41.5582, 14.6625, W_STD, 45, 10.0, "Tastings of the local Tintilia wine."),
    ("cb-caseificio", "Caseificio del Matese", "Campobasso", ["food", "shopping"],
     41.5530, 14.6700, W_MORNING, 40, 8.0, "Dairy shop, fresh caciocavallo."),
    ("cb-pasticceria-centro", "Pasticceria del Centro", "Campobasso", ["food", "family", "vegetarian"],
     41.5592, 14.6598, W_STD, 25, 5.0, "Historic pastry shop."),
    ("cb-ristorante-matese", "Ristorante del Matese", "Campobasso", ["food", "restaurant", "vegetarian"],
     41.5575, 14.6635, W_REST, 90, 20.0, "Mountain cuisine, vegetarian menu available."),
    ("cb-biblioteca-albino", "Biblioteca Albino", "Campobasso", ["culture"],
     41.5565, 14.6612, W_STD, 40, 0.0, "Historic library with reading rooms."),
    ("cb-galleria-arte", "Galleria d'Arte Moderna", "Campobasso", ["culture"],
     41.5552, 14.6628, W_MUSEUM, 50, 4.0, "Modern art gallery."),
    ("cb-piazza-pepe", "Piazza Gabriele Pepe", "Campobasso", ["culture", "shopping"],
     41.5589, 14.6601, W_ALL, 20, 0.0, "Central square with cafes."),
    ("cb-corso-shopping", "Corso Vittorio Emanuele", "Campobasso", ["shopping"],
     41.5583, 14.6593, W_STD, 60, 0.0, "Main shopping street."),
    ("cb-stadio-romagnoli", "Percorso Sportivo Romagnoli", "Campobasso", ["sport"],
     41.5620, 14.6700, W_ALL, 60, 0.0, "Running circuit near the stadium."),
    ("cb-parco-giochi", "Parco Giochi dei Pini", "Campobasso", ["family", "nature"],
     41.5545, 14.6570, W_ALL, 60, 0.0, "Playground under the pines."),
    ("cb-sagra-uva", "Sagra dell'Uva", "Campobasso", ["events", "food"],
     41.5605, 14.6630, W_STD, 90, 3.0, "Seasonal grape festival stalls."),
    ("cb-mostra-ferri", "Mostra dei Ferri Taglienti", "Campobasso", ["events", "culture", "history"],
     41.5615, 14.6590, W_MUSEUM, 45, 4.0, "Blade-making tradition exhibition."),
    # Termoli
    ("tm-borgo", "Borgo Antico di Termoli", "Termoli", ["history", "sea", "culture"],
     42.0048, 14.9985, W_ALL, 90, 0.0, "Walled old town on the promontory."),
    ("tm-castello-svevo", "Castello Svevo", "Termoli", ["history", "culture"],
     42.0055, 14.9990, W_STD, 60, 4.0, "Swabian castle by the sea."),
    ("tm-cattedrale", "Cattedrale di Termoli", "Termoli", ["religion", "history"],
     42.0050, 15.0005, W_CHURCH, 40, 0.0, "Romanesque cathedral in the old town."),
    ("tm-spiaggia", "Spiaggia di Sant'Antonio", "Termoli", ["sea", "nature", "family"],
     42.0020, 15.0040, W_ALL, 120, 0.0, "Sandy beach next to the old town."),
    ("tm-trabucco", "Trabucco del Porto", "Termoli", ["sea", "culture"],
     42.0065, 14.9950, W_STD, 30, 3.0, "Traditional fishing machine on the pier."),
    ("tm-ristorante-mare", "Ristorante Vecchio Molo", "Termoli", ["food", "restaurant"],
     42.0060, 14.9960, W_REST, 90, 28.0, "Seafood by the harbour."),
    ("tm-pizzeria-faro", "Pizzeria del Faro", "Termoli", ["food", "restaurant", "vegetarian", "family"],
     42.0030, 15.0020, W_REST, 75, 14.0, "Pizza with vegetarian choices, near the lighthouse."),
]


def main():
    out = Path(__file__).resolve().parent.parent / "data" / "pois_molise.jsonl"
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8") as fh:
        for pid, name, dest, tags, lat, lon, hours, dur, cost, desc in POIS:
            record = {
                "id": pid, "name": name, "destination": dest,
                "category_tags": tags,
                "position": {"lat": lat, "lon": lon},
                "hours": hours,
                "visit_duration": dur, "cost_per_person": cost,
                "description": desc, "source_ref": "fixture",
            }
            fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
    print(f"wrote {len(POIS)} POIs -> {out}")


if __name__ == "__main__":
    main()
