# Flask translate service
